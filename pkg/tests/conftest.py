# keeps the tests directory importable (oracles.py) via pytest's sys.path rule
