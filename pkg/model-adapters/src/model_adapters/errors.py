"""Error type raised for every adapter-level failure."""


class AdapterError(Exception):
    """Bad adapter spec, unreachable checkpoint, unreadable media, or a
    produced embedding that does not match the declared width."""
