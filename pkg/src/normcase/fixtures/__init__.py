"""Bundled example models."""

from importlib import resources


def fixture_source(name: str = "quittance") -> str:
    return (
        resources.files(__package__).joinpath(f"{name}.norm").read_text("utf-8")
    )
