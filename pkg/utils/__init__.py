"""Front-end helpers for the command line: rendering and command dispatch."""
