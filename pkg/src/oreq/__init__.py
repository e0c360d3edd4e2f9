"""oreq: exact computation in the algebra of polynomial integro-differential
operators, its quotient division ring, and Ore localization of finite rings."""

__version__ = "0.1.0"
