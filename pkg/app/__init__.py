# W(m,n) Module Engine
