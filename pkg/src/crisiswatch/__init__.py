"""Tweet-stream monitoring and analytics for crisis communications teams."""

__version__ = "0.1.0"
