"""Exception types shared across the package."""


class CfpqError(Exception):
    """Base class for all errors raised by this package."""


class EmptyGrammar(CfpqError):
    """Grammar text contained no rules."""


class MalformedRule(CfpqError):
    """A grammar line does not match ``LHS -> sym sym ...``."""


class InvalidGrammar(CfpqError):
    """Productions and declared symbol sets do not form a valid grammar."""


class UnknownNonterminal(CfpqError):
    """A symbol was used where a nonterminal of the grammar was required."""


class UnknownVertex(CfpqError):
    """A vertex id or vertex name is not part of the graph."""


class MalformedTriple(CfpqError):
    """A triple line does not have exactly three tab-separated fields."""


class InvalidParams(CfpqError):
    """Generator or CLI parameters out of range."""


class SizeGuardExceeded(CfpqError):
    """The reference evaluator refused an input above its size budget."""
