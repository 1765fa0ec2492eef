# Copyright (c) 2026 The ProBench Authors.
# Licensed under the Apache License, Version 2.0. See
# http://www.apache.org/licenses/LICENSE-2.0

"""Python access to the ProBench evaluation harness."""

try:
    from ._probench import *  # noqa: F401,F403
    from ._probench import Error, ValidationError
except ImportError:  # in-tree build: the extension sits next to, not inside, the package
    from _probench import *  # noqa: F401,F403
    from _probench import Error, ValidationError

__version__ = "0.1.0"
