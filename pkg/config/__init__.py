# Configuration package for hypspinor
