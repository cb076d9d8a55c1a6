"""main.py: Main module of the application."""
import sys

from app import App

if __name__ == "__main__":
    sys.exit(App().run(sys.argv[1:]))
