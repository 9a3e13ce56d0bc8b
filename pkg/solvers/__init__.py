# Solvers module initialization
