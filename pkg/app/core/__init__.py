# Settings, errors and the suite catalogue
