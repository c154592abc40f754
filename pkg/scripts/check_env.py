#!/usr/bin/env python3
"""
Helper script to check .env file configuration
Displays which environment variables the workbench reads and their effective values
"""
import os
from pathlib import Path
from dotenv import load_dotenv

project_root = Path(__file__).parent.parent
env_path = project_root / '.env'

print("=" * 60)
print("Environment Configuration Check")
print("=" * 60)

if env_path.exists():
    print(f"\n✓ .env file found at: {env_path}")
    load_dotenv(dotenv_path=env_path)
else:
    print(f"\n• No .env file at: {env_path} (defaults apply)")
    print("\nAn optional .env file may set:")
    print("  CELLULAR_DIGITS=30")
    print("  CELLULAR_THREADS=4")
    print("  LOG_LEVEL=INFO")
    print("  ENABLE_LOGGING=True")

variables = {
    'CELLULAR_DIGITS': ('Default decimal precision for eval and fit', '30'),
    'CELLULAR_THREADS': ('Worker processes for enumeration', '1'),
    'LOG_LEVEL': ('Console log level', 'INFO'),
    'ENABLE_LOGGING': ('Logging switch', 'True'),
}

print("\nVariables:")
print("-" * 60)
problems = []
for var, (description, default) in variables.items():
    value = os.getenv(var)
    if value is None:
        print(f"  • {var:20} = {default} (default)  {description}")
        continue
    print(f"  ✓ {var:20} = {value}  {description}")
    if var in ('CELLULAR_DIGITS', 'CELLULAR_THREADS') and not (value.isdigit() and int(value) > 0):
        problems.append(f"{var} must be a positive integer, got {value!r}")
    if var == 'LOG_LEVEL' and value.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        problems.append(f"LOG_LEVEL {value!r} is not a logging level")

print("\n" + "=" * 60)
if problems:
    print("❌ Some variables are invalid:")
    for problem in problems:
        print(f"  - {problem}")
    print("=" * 60)
    exit(1)
print("✅ Environment is usable.")
print("\nYou can now run:")
print("  python -m cellular.main enumerate 8")
print("=" * 60)
