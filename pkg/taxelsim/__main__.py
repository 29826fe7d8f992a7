"""Enable running taxelsim as a module: python -m taxelsim"""
from taxelsim.main import main

if __name__ == "__main__":
    main()
