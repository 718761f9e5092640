from ._nanokit import *  # noqa: F401,F403
