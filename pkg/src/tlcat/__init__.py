"""Computer algebra for the Temperley-Lieb algebra and its polynomial shadows."""

__version__ = "0.1.0"
