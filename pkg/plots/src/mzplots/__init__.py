"""mzplots: offline figure rendering for mzlab experiment CSVs."""

__version__ = "0.1.0"
