"""
Generalized Calabi–Yau structures on invariant models and exact
Duistermaat–Heckman densities of their quotient families.

Usage:
    from core.geometry.gcydh import gcy_check, quotient_family, dh_density

    family = quotient_family(t4, rho1, c, 't')
    dh_density(family, n=3, k=1, orientation=1).density.factored()   # '-2*pi*(t+1)'
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from core.algebra import linalg
from core.algebra.exterior import (
    Form,
    degree_basis,
    exp_two_form,
    integrate,
    mukai,
    operator_matrix,
    reversal,
    wedge,
)
from core.algebra.scalar import Scalar
from core.exceptions import (
    CalabiYauError,
    DegenerateForm,
    DegreeBoundViolated,
    DegreeError,
    NonConstantError,
    PreconditionError,
)
from core.geometry import gclinear
from core.geometry.report import Report

logger = logging.getLogger('twistcalc.dh')


def _sample_points(parameters, samples):
    """Cartesian product of declared sample values, one dict per point."""
    if not parameters:
        return [{}]
    pools = []
    for name in parameters:
        values = samples.get(name)
        if not values:
            raise CalabiYauError(f'no sample values declared for parameter {name!r}')
        pools.append([Fraction(v) for v in values])
    return [dict(zip(parameters, point)) for point in product(*pools)]


@dataclass
class GCYStructure:
    model: object
    rho: Form
    pairing: Scalar
    half_dim: int
    type: int = None
    flags: dict = field(default_factory=dict)
    samples: dict = field(default_factory=dict)


def gcy_check(model, rho, samples=None):
    """d_H ρ = 0 and (ρ, ρ̄) ≠ 0 at every sample point."""
    samples = samples or {}
    if rho.n_generators != model.n_generators:
        raise PreconditionError('spinor is not on the model generators')
    if model.n_generators % 2:
        raise CalabiYauError('a generalized Calabi–Yau structure needs an even number of generators')
    residual = model.d_twisted(rho)
    if not residual.is_zero:
        raise CalabiYauError('ρ is not d_H-closed', detail=residual)
    pairing = mukai(rho, rho.conjugate())
    points = _sample_points(rho.parameters, samples)
    for point in points:
        if pairing.substitute(point).is_zero:
            raise CalabiYauError(
                'Mukai pairing (ρ, ρ̄) vanishes', detail={'sample': {k: str(v) for k, v in point.items()},
                                                        'pairing': str(pairing)},
            )
    constant = rho.substitute(points[0])
    flags = {}
    structure_type = None
    try:
        ann = gclinear.annihilator(constant)
    except NonConstantError:
        ann = None
    if ann is not None:
        flags = {
            'isotropic': ann.is_isotropic,
            'maximal_isotropic': ann.is_maximal_isotropic,
            'nondegenerate': ann.nondegenerate,
            'transverse': ann.transverse,
        }
        if not ann.is_maximal_isotropic:
            raise CalabiYauError('ρ is not a pure spinor', detail=flags)
        structure_type = ann.subspace.dim - ann.subspace.projection_rank()
    logger.debug('gcy check on %r passed with pairing %s', model, pairing)
    return GCYStructure(
        model=model, rho=rho, pairing=pairing, half_dim=model.n_generators // 2,
        type=structure_type, flags=flags, samples=samples,
    )


def pairing_polynomial(g):
    return g.pairing


def _volume_constant(n):
    """(−1)^n / (2i)^n."""
    return Scalar.of((-1) ** n) / Scalar.gaussian(0, 2) ** n


def volume_form(g):
    n = g.half_dim
    return Form.top(g.model.n_generators, _volume_constant(n) * g.pairing)


# ── Families ─────────────────────────────────────────────────────────

@dataclass
class Family:
    model: object
    rho: Form
    parameter: str
    c: Form = None
    structure: GCYStructure = None
    n: int = None
    k: int = None
    type: int = None
    name: str = ''
    base: Form = None


def quotient_family(model, rho, c, parameter='t', samples=None, **extra):
    """ρ_t = e^{−itc} ∧ ρ for a closed 2-form c."""
    if not c.is_homogeneous(2):
        raise DegreeError('c must be a 2-form', detail=c.degrees)
    residual = model.d(c)
    if not residual.is_zero:
        raise PreconditionError('c is not closed', detail=residual)
    phase = Scalar.i() * Scalar.parameter(parameter) * -1
    rho_t = wedge(exp_two_form(c * phase), rho)
    samples = samples or {parameter: (0, 1, Fraction(-1, 2))}
    structure = gcy_check(model, rho_t, samples)
    return Family(
        model=model, rho=rho_t, parameter=parameter, c=c, structure=structure, base=rho, **extra,
    )


def b_transform_family(fam, B):
    """e^{−B} ∧ ρ_t for a closed, parameter-free 2-form B."""
    if not B.is_constant:
        raise PreconditionError('B must not depend on parameters', detail=str(B))
    if not B.is_homogeneous(2):
        raise DegreeError('B must be a 2-form', detail=B.degrees)
    residual = fam.model.d(B)
    if not residual.is_zero:
        raise PreconditionError('B is not closed', detail=residual)
    shear = exp_two_form(-B)
    rho = wedge(shear, fam.rho)
    base = wedge(shear, fam.base) if fam.base is not None else None
    structure = gcy_check(fam.model, rho, fam.structure.samples if fam.structure else None)
    return Family(
        model=fam.model, rho=rho, parameter=fam.parameter, c=fam.c, structure=structure,
        n=fam.n, k=fam.k, type=fam.type, name=fam.name, base=base,
    )


# ── Densities ────────────────────────────────────────────────────────

@dataclass
class DHResult:
    density: Scalar
    n: int
    k: int
    degree_bound: int
    normalization: Scalar
    orientation: int
    diagnostics: list = field(default_factory=list)


def dh_normalization(n, k):
    """(−1)^{n + k(k+1)/2} (2π)^k / (2i)^{n−k}."""
    sign = (-1) ** (n + k * (k + 1) // 2)
    return Scalar.of(sign) * (Scalar.of(2) * Scalar.pi()) ** k / Scalar.gaussian(0, 2) ** (n - k)


def dh_density(fam, n=None, k=None, orientation=None):
    n = n if n is not None else fam.n
    k = k if k is not None else fam.k
    if n is None or k is None:
        raise PreconditionError('n and k must be given for a density')
    if fam.model.n_generators != 2 * n - 2 * k:
        raise PreconditionError(
            f'quotient model has {fam.model.n_generators} generators, expected 2n − 2k = {2 * n - 2 * k}',
        )
    orientation = orientation if orientation is not None else fam.model.orientation
    if orientation not in (1, -1):
        raise PreconditionError('orientation must be +1 or -1', detail=orientation)
    normalization = dh_normalization(n, k)
    pairing = wedge(reversal(fam.rho), fam.rho.conjugate())
    density = normalization * integrate(pairing, fam.model.volume, orientation)
    bound = n - k - (fam.type or 0)
    degree = density.degree_in(fam.parameter)
    if degree > bound:
        raise DegreeBoundViolated(
            f'density has degree {degree} in {fam.parameter}, bound is {bound}',
            detail=density.factored(),
        )
    diagnostics = []
    if not density.is_real:
        logger.warning('non-real DH density %s for family %s', density, fam.name or fam.parameter)
        diagnostics.append(f'density has a nonzero imaginary part: {density}')
    return DHResult(
        density=density, n=n, k=k, degree_bound=bound, normalization=normalization,
        orientation=orientation, diagnostics=diagnostics,
    )


# ── Lefschetz ────────────────────────────────────────────────────────

def lefschetz_check(model, omega):
    """
    ω^{n−1}∧· from 1-forms to (2n−1)-forms has full rank 2n.  Degenerate ω
    raises DegenerateForm; when the map drops rank its detail is a kernel
    1-form.
    """
    if not omega.is_homogeneous(2):
        raise DegreeError('ω must be a 2-form', detail=omega.degrees)
    size = model.n_generators
    if size % 2 or size == 0:
        raise DegenerateForm(f'no symplectic form on {size} generators')
    n = size // 2
    power = Form.one(size)
    for _ in range(n - 1):
        power = wedge(power, omega)
    matrix = operator_matrix(
        size, lambda a: wedge(power, a),
        domain=degree_basis(size, 1), codomain=degree_basis(size, size - 1),
    )
    kernel = linalg.nullspace(matrix, size)
    if kernel:
        witness = Form.from_vector(size, kernel[0], degree_basis(size, 1))
        raise DegenerateForm('ω^{n−1}∧ is not bijective on 1-forms', detail=str(witness))
    # n = 1: the map is the identity whatever ω is
    if wedge(power, omega).top_coefficient.is_zero:
        raise DegenerateForm('ω^n vanishes', detail=str(omega))
    report = Report()
    report.details['rank'] = size
    return report
