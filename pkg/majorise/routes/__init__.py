import click

from majorise.config import setting


def input_option(name, help_text):
    return click.option(f"-{name}", f"{name}_path", type=str, default=None, help=help_text)


normalize_option = click.option(
    "--normalize", is_flag=True, help="Rescale input spaces to total mass 1 before use."
)
seed_option = click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=None)
trials_option = click.option("--trials", type=click.IntRange(min=0), default=None)
tol_option = click.option("--tol", type=click.FloatRange(min=0.0), default=None)


def config_default(value, key):
    return setting(key, value)
