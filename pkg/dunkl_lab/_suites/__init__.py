from . import constants, decay, density, duality, kernel, spherical, translate

SUITES = {
    "constants": constants.run,
    "kernel": kernel.run,
    "duality": duality.run,
    "density": density.run,
    "spherical": spherical.run,
    "translate": translate.run,
    "decay": decay.run,
}

__all__ = ["SUITES"]
