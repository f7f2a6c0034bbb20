"""
Canonical text for forms, equivariant forms and whole model files.

Terms appear in canonical order (degree, then lexicographic indices);
compound coefficients are parenthesized, so parse(format_form(f)) == f.
"""
from core.algebra.exterior import mask_indices
from core.algebra.scalar import Scalar


def _has_top_level_sign(text):
    depth = 0
    for position, char in enumerate(text):
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        elif char in '+-' and depth == 0 and position > 0:
            return True
    return False


def format_scalar(value):
    text = str(Scalar.of(value))
    if _has_top_level_sign(text):
        return f'({text})'
    return text


def _generator_names(n, names):
    return tuple(names) if names else tuple(f'e{i}' for i in range(1, n + 1))


def _term(mask, coeff, names):
    if mask == 0:
        return format_scalar(coeff)
    monomial = '^'.join(names[i - 1] for i in mask_indices(mask))
    if coeff == 1:
        return monomial
    if coeff == -1:
        return f'-{monomial}'
    return f'{format_scalar(coeff)}*{monomial}'


def format_form(form, names=None):
    names = _generator_names(form.n_generators, names)
    text = ''
    for mask, coeff in form.items():
        term = _term(mask, coeff, names)
        if not text:
            text = term
        elif term.startswith('-'):
            text += f' - {term[1:]}'
        else:
            text += f' + {term}'
    return text or '0'


def _x_monomial(exponents):
    parts = []
    for j, power in enumerate(exponents, start=1):
        if power == 1:
            parts.append(f'x{j}')
        elif power > 1:
            parts.append(f'x{j}**{power}')
    return '*'.join(parts)


def format_eqform(eq, names=None):
    pieces = []
    for exponents, form in eq.items():
        body = format_form(form, names)
        xs = _x_monomial(exponents)
        single = len(list(form.items())) == 1 and not body.startswith('-')
        if not xs:
            pieces.append(body if single else f'({body})')
        elif body == '1':
            pieces.append(xs)
        else:
            pieces.append(f'{xs}*{body}' if single else f'{xs}*({body})')
    return ' + '.join(pieces) or '0'


def _matrix_text(rows):
    return '[' + ', '.join(
        '[' + ', '.join(format_scalar(value) for value in row) + ']' for row in rows
    ) + ']'


def format_model(mf):
    """Canonical model-file text; loading it again yields the same objects."""
    names = mf.generators
    model = mf.model
    lines = []
    if mf.name:
        lines.append(f'model {mf.name}')
    lines.append('generators ' + ' '.join(names))
    if mf.parameters:
        lines.append('parameters ' + ' '.join(mf.parameters))
    for name, image in zip(names, model.d_table):
        if not image.is_zero:
            lines.append(f'd {name} = {format_form(image, names)}')
    if not model.H.is_zero:
        lines.append(f'H = {format_form(model.H, names)}')
    if model.volume != 1:
        lines.append(f'volume = {format_scalar(model.volume)}')
    if model.orientation != 1:
        lines.append('orientation = -1')
    for keyword, table in (('form', mf.forms), ('spinor', mf.spinors)):
        for name, form in table.items():
            lines.append(f'{keyword} {name} = {format_form(form, names)}')
    for parameter, values in mf.samples.items():
        lines.append(f'samples {parameter} = ' + ', '.join(str(v) for v in values))
    for name, structure in mf.structures.items():
        lines.append(f'structure {name} = matrix({_matrix_text(structure.rows)})')
    for name, action in mf.actions.items():
        lines.append(f'action {name}')
        for vector in action.xi:
            lines.append('  xi = ' + ', '.join(format_scalar(v) for v in vector))
        for key, forms in (('mu_diff', action.mu_diff), ('alpha', action.alpha)):
            for form in forms:
                lines.append(f'  {key} = {format_form(form, names)}')
        for form in action.theta or ():
            lines.append(f'  theta = {format_form(form, names)}')
        lines.append('end')
    for name, family in mf.families.items():
        options = f'n={family.n} k={family.k}'
        if family.type is not None:
            options += f' type={family.type}'
        lines.append(
            f'family {name} = quotient({format_form(family.base, names)}, '
            f'{format_form(family.c, names)}, {family.parameter}) {options}'
        )
    return '\n'.join(lines) + '\n'
