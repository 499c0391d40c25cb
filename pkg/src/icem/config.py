"""Process-wide numerical tolerances and resource caps.

The caps are module-level so a long-running process can raise them once;
everything else treats them as read-only.
"""

# Largest amplitude vector a PureState may hold.
STATE_AMPLITUDE_CAP = 2**20

# Largest combined register (ancillas x copies) the swap-test simulator builds.
SWAP_AMPLITUDE_CAP = 2**22

# Eigenvalues below this threshold count as zero when ranks are computed.
EPS_RANK = 1e-10

# Zero test used by separability / genuine-entanglement verdicts.
EPS_MEASURE = 1e-9


class DimensionCapError(RuntimeError):
    """Raised when a requested computation exceeds a configured size cap."""
