from .local import local
from .build import build_docs
