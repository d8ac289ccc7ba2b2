# REST routes
