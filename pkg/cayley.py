import sys

from REPL.interpreter import main


if __name__ == '__main__':
    sys.exit(main())
