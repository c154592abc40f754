import sys
from pathlib import Path

from dotenv import load_dotenv

# Get the project root directory (parent of the cellular package)
project_root = Path(__file__).parent.parent
env_path = project_root / '.env'

# Try loading from project root first, then fallback to current directory
if env_path.exists():
    load_dotenv(dotenv_path=env_path)
else:
    load_dotenv()

# The CLI reads CELLULAR_DIGITS and friends through cellular.config, so it is
# imported only after the environment is loaded.
from cellular.cli import run  # noqa: E402


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
