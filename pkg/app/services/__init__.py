# Algebra, module and verification services
