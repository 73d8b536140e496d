"""Multi-sequential decomposition of finite-state transducers."""

from .core import (Edge, MultiTransducer, Transducer, ValidationError, evaluate, is_sequential,
                   isomorphic, relation_upto, trim, union)
from .decompose import Decomposition, WtpViolation, decompose, equiv_bounded
from .fstformat import parse, parse_many, serialize, serialize_many
from .twinning import check_tp, check_wtp
from .weakdet import weak_determinize

__version__ = "0.1.0"
