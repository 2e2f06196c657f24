"""Entry point for python -m hws_elj."""

from .cli import app

if __name__ == "__main__":
    app()
