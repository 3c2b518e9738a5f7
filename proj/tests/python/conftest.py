import os
import sys

# The CMake build drops the extension module next to the build tree; tests
# run against it directly via MPMSDEM_CORE_DIR (set by ctest).
core_dir = os.environ.get("MPMSDEM_CORE_DIR")
if core_dir and core_dir not in sys.path:
    sys.path.insert(0, core_dir)
