"""Four-layer phishing site scanner.

Re-exports the compiled core: URL lexical feature extraction and chi-squared
selection, the random forest and LSTM classifiers, page parsing, the mock
media container, fixture generation, and the scan orchestrator.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
