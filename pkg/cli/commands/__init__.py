from . import evaluate, label, pipeline, summarize, train

COMMANDS = [label, train, summarize, evaluate, pipeline]

__all__ = ["COMMANDS"]
