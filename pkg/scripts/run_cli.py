#!/usr/bin/env python3
"""
CLI script for the AQFT toolkit
Script CLI para el simulador AQFT

Examples:
    python scripts/run_cli.py matrix --kind fft --l 3
    python scripts/run_cli.py schedule --l 5
    python scripts/run_cli.py deviation --l 500 --m 20
    python scripts/run_cli.py orderfind --n 15 --x 7 --shots 256 --seed 0
    python scripts/run_cli.py plan --l 4 --m 2 --output plan.txt
"""

import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules.cli import main


if __name__ == "__main__":
    sys.exit(main())
