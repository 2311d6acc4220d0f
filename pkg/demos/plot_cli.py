"""
Driving the command line from Python
====================================

``ybx.cli.main`` takes an argument list and returns the exit code, so the
command line can be scripted without a subprocess.
"""

from ybx.cli import main

main(["element", "r", "--upper", "2,2,1", "--lower", "3,1,2"])
main(["verify", "te-comb", "--kind", "RLLL"])
code = main(["verify", "inverse", "--eps", "010", "--l", "3", "--m", "2", "--format", "json"])
print("exit code:", code)
