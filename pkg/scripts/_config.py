"""Turn a dataclass of defaults into ``--field value`` command-line overrides."""
import argparse
import dataclasses


def parse_config(cls, argv=None):
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        kind = f.type if isinstance(f.type, type) else type(f.default)
        if kind is bool:
            p.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, action=argparse.BooleanOptionalAction,
                           default=f.default)
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, type=kind if kind is not type(None) else str,
                           default=f.default)
    return cls(**vars(p.parse_args(argv)))
