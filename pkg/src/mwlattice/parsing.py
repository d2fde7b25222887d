"""Tiny expression parser for polynomials in scenario files and tests.

Accepts +, -, *, /, ^ (or **), integer literals, the variables t and x, and
the field generator by its display name.  Implemented on Python's ast so no
grammar of our own; only a whitelist of node types evaluates.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .bipoly import BiPoly
from .errors import ScenarioError
from .numberfield import FieldSpec
from .polynomials import UniPoly


def parse_bipoly(text: str, field: FieldSpec) -> BiPoly:
    """Parse a polynomial in t and x (and the field generator) into a BiPoly."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ScenarioError(f"cannot parse polynomial {text!r}: {exc}") from exc
    env = {
        "t": BiPoly.var_t(field),
        "x": BiPoly.var_x(field),
    }
    if field.degree > 1:
        env[field.generator_name] = BiPoly.const(field, field.gen())
    return _eval_node(tree.body, env, field, text)


def parse_unipoly(text: str, field: FieldSpec, var: str = "t") -> UniPoly:
    bp = parse_bipoly(text, field)
    if var == "t":
        if bp.degree_in_x() > 0:
            raise ScenarioError(f"{text!r} must not involve x")
        return bp.coeff_of_x(0)
    if bp.degree_in_t() > 0:
        raise ScenarioError(f"{text!r} must not involve t")
    deg = bp.degree_in_x()
    cs = [field.zero()] * (deg + 1)
    for (i, j), v in bp.terms.items():
        cs[j] = v
    return UniPoly(field, var, cs)


def parse_field_element(text: str, field: FieldSpec):
    p = parse_bipoly(str(text), field)
    if p.degree_in_t() > 0 or p.degree_in_x() > 0:
        raise ScenarioError(f"{text!r} is not a constant")
    return p.coeff_of_x(0).eval(field.zero())


def _eval_node(node, env, field: FieldSpec, src: str):
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_node(node.left, env, field, src)
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ScenarioError(f"exponent must be an integer literal in {src!r}")
            return base ** node.right.value
        left = _eval_node(node.left, env, field, src)
        right = _eval_node(node.right, env, field, src)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not isinstance(right, BiPoly):
                raise ScenarioError(f"bad division in {src!r}")
            if right.degree_in_t() > 0 or right.degree_in_x() > 0:
                raise ScenarioError(f"can only divide by constants in {src!r}")
            return left / right.coeff_of_x(0).eval(field.zero())
        raise ScenarioError(f"unsupported operator in {src!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand, env, field, src)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ScenarioError(f"unsupported unary operator in {src!r}")
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return BiPoly.const(field, Fraction(node.value))
        raise ScenarioError(f"only integer literals allowed, got {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        raise ScenarioError(f"unknown symbol {node.id!r} in {src!r}")
    raise ScenarioError(f"unsupported syntax in {src!r}")
