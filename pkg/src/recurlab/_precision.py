import os

#: Decimal digits used for extended-precision work unless a caller asks otherwise.
DEFAULT_DPS = int(os.environ.get("RECURLAB_DPS", "50"))
