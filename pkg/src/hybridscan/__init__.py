"""Static detection of code injection through data channels in hybrid mobile apps.

Modules:

- :mod:`hybridscan.sinks` -- display-sink catalog and activation emulator
- :mod:`hybridscan.channels` -- injection channels and field length limits
- :mod:`hybridscan.forge` -- length-constrained loader and fragment generation
- :mod:`hybridscan.analysis` -- three-condition scanner over app sources
- :mod:`hybridscan.plugins` -- bridge-plugin taxonomy and companion-JS audit
- :mod:`hybridscan.cli` -- command-line entry point
"""

__version__ = "0.1.0"
