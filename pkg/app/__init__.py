"""sl3 web spider evaluation and SU(3) representation checks."""
