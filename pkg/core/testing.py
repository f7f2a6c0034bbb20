"""
Helpers shared by the test modules: seeded randomness, random exact forms
and fixture paths.
"""
import random
from fractions import Fraction
from pathlib import Path

from django.conf import settings

from core.algebra.exterior import Form, basis, degree_basis
from core.algebra.scalar import Scalar

FIXTURES = Path(__file__).resolve().parent / 'fixtures'
MODELS = FIXTURES / 'models'
GOLDEN = FIXTURES / 'golden'


def model_path(name):
    return MODELS / f'{name}.model'


def seeded(offset=0):
    """random.Random seeded from settings, so a failing case reproduces."""
    return random.Random(settings.TWISTCALC['RANDOM_SEED'] + offset)


def random_scalar(rng, gaussian=True, bound=3):
    real = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
    imag = rng.randint(-bound, bound) if gaussian else 0
    return Scalar.gaussian(real, imag)


def random_form(rng, n, masks=None, density=0.5, gaussian=True):
    masks = basis(n) if masks is None else masks
    terms = {
        mask: random_scalar(rng, gaussian)
        for mask in masks
        if rng.random() < density
    }
    return Form(n, terms)


def random_homogeneous(rng, n, q, density=0.6, gaussian=True):
    return random_form(rng, n, degree_basis(n, q), density, gaussian)


def random_vector(rng, length, gaussian=True):
    return [random_scalar(rng, gaussian) for _ in range(length)]
