from ._polymap import *  # noqa: F401,F403
from ._polymap import __doc__  # noqa: F401
