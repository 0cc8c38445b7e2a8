"""Extension handler, spec loading, verification and the command line."""
