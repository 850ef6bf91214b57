# thetaglue package init.

__version__ = "1.0.0"
