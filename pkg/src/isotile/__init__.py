"""isotile - exact kernel for decorated isosceles right triangle tilings."""

__version__ = "0.1.0"
