"""Stock model domains: convex profile domains in C^2 with named shapes.

Each domain is { (z1, z2) : Re z1 > psi(|z2|) } cut down by the affine
box Re z1 < 3, |Im z1| < 3 and the radial cap |z2| < 2, so everything
is bounded and convex.  The three stock profiles differ only in how
flat the boundary is at the distinguished point (0, 0):

  hinge          flat unit-disc face, parabolic rim, C^{1,1} but not C^2
  flat_exp       infinitely flat (all derivatives vanish at the center)
  flat_quartic   finite type: t^4, the negative control

Interior tangent-ball constants: ball_curvature_sup dominates psi'' on
[0, ball_contact_cap + ball_radius], so radius * sup <= 1 certifies the
curvature comparison in ub_interior_ball.

  hinge          psi'' <= 2 everywhere                     -> R = 0.4
  flat_exp       max of e^{-1/t} t^{-4} (1 - 2t) sits at
                 t = (3 - sqrt 3)/6 ~ 0.21132, value 2.5513,
                 continuation piece is constant 64 e^{-4}   -> R = 0.39
  flat_quartic   12 t^2 <= 12 * 0.55^2 = 3.63 on [0, 0.55] -> R = 0.2
"""

from __future__ import annotations

import math

import numpy as np

from .convex import AffineConstraint, CertificateError, ModelDomain, PointC2
from .profiles import EXP_FLAT, HINGE, PROFILES, QUARTIC

_BOX = (
    AffineConstraint(1.0 + 0.0j, 0.0 + 0.0j, 3.0),
    AffineConstraint(0.0 + 1.0j, 0.0 + 0.0j, 3.0),
    AffineConstraint(0.0 - 1.0j, 0.0 + 0.0j, 3.0),
)

_BASE: PointC2 = (1.0 + 0.0j, 0.0 + 0.0j)

HINGE_MODEL = ModelDomain(
    name="hinge",
    profile=HINGE,
    affine=_BOX,
    z2_cap=2.0,
    base_point=_BASE,
    ball_radius=0.4,
    ball_contact_cap=1.2,
    ball_curvature_sup=2.0,
    notes="C^{1,1} boundary with a genuinely flat face",
)

FLAT_EXP_MODEL = ModelDomain(
    name="flat_exp",
    profile=EXP_FLAT,
    affine=_BOX,
    z2_cap=2.0,
    base_point=_BASE,
    ball_radius=0.39,
    ball_contact_cap=0.25,
    ball_curvature_sup=2.5513,
    notes="smooth boundary, infinitely flat at the marked point",
)

FLAT_QUARTIC_MODEL = ModelDomain(
    name="flat_quartic",
    profile=QUARTIC,
    affine=_BOX,
    z2_cap=2.0,
    base_point=_BASE,
    ball_radius=0.2,
    ball_contact_cap=0.35,
    ball_curvature_sup=3.63,
    notes="finite-type control",
)

MODELS: dict[str, ModelDomain] = {
    m.name: m for m in (HINGE_MODEL, FLAT_EXP_MODEL, FLAT_QUARTIC_MODEL)
}


# ---------------------------------------------------------------------------
# plain-text round trip (config-style, '#' comments, no nesting)


def _fmt_complex(z: complex) -> str:
    return f"{z.real!r} {z.imag!r}"


def format_model(domain: ModelDomain) -> str:
    lines = [
        f"# model domain {domain.name}",
        f"name = {domain.name}",
        f"profile = {domain.profile.name}",
        f"z2_cap = {domain.z2_cap!r}",
        f"disc_radius = {domain.disc_radius!r}",
        f"base = {_fmt_complex(domain.base_point[0])} {_fmt_complex(domain.base_point[1])}",
        f"ball = {domain.ball_radius!r} {domain.ball_contact_cap!r} {domain.ball_curvature_sup!r}",
    ]
    for f in domain.affine:
        lines.append(f"affine = {_fmt_complex(f.a)} {_fmt_complex(f.b)} {f.c!r}")
    if domain.notes:
        lines.append(f"notes = {domain.notes}")
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> ModelDomain:
    fields: dict[str, str] = {}
    affine: list[AffineConstraint] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"unparseable model line: {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key == "affine":
            parts = [float(tok) for tok in val.split()]
            if len(parts) != 5:
                raise ValueError(f"affine row needs 5 numbers, got {val!r}")
            affine.append(
                AffineConstraint(
                    complex(parts[0], parts[1]), complex(parts[2], parts[3]), parts[4]
                )
            )
        else:
            fields[key] = val
    try:
        profile = PROFILES[fields["profile"]]
    except KeyError as exc:
        raise ValueError(f"unknown or missing profile: {fields.get('profile')}") from exc
    base_parts = [float(tok) for tok in fields["base"].split()]
    if len(base_parts) != 4:
        raise ValueError("base point needs 4 numbers")
    ball = [float(tok) for tok in fields.get("ball", "0 0 0").split()]
    return ModelDomain(
        name=fields["name"],
        profile=profile,
        affine=tuple(affine),
        z2_cap=float(fields["z2_cap"]),
        base_point=(
            complex(base_parts[0], base_parts[1]),
            complex(base_parts[2], base_parts[3]),
        ),
        disc_radius=float(fields.get("disc_radius", 1.45)),
        ball_radius=ball[0],
        ball_contact_cap=ball[1],
        ball_curvature_sup=ball[2],
        notes=fields.get("notes", ""),
    )


# ---------------------------------------------------------------------------
# sampling


def sample_interior(
    domain: ModelDomain,
    n: int,
    rng: np.random.Generator,
    margin: float = 1e-6,
    max_tries: int = 200,
) -> list[PointC2]:
    """n interior points with all face margins above `margin`.

    Rejection sampling from the bounding box; the stock domains fill a
    decent fraction of it, so the try budget is generous rather than tight.
    """
    cap = domain.z2_cap
    out: list[PointC2] = []
    for _ in range(max_tries * n):
        if len(out) >= n:
            break
        z = (
            complex(rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0)),
            complex(rng.uniform(-cap, cap), rng.uniform(-cap, cap)),
        )
        if domain.contains(z, slack=-margin):
            out.append(z)
    if len(out) < n:
        raise CertificateError(
            f"interior sampling starved after {max_tries * n} tries on {domain.name}"
        )
    return out


def curvature_margin(domain: ModelDomain, samples: int = 2048) -> float:
    """min over a grid of (ball_curvature_sup - psi'') on the certified
    span [0, contact_cap + radius]; a nonnegative value (up to second
    difference noise) means the recorded ball constants dominate the
    profile's curvature as required by ub_interior_ball."""
    if domain.ball_radius <= 0.0:
        raise CertificateError(f"{domain.name} has no interior-ball data")
    span = domain.ball_contact_cap + domain.ball_radius
    worst = math.inf
    h = 1e-5
    for k in range(samples + 1):
        t = h + (span - h) * k / samples
        # central second difference; profiles are C^1 with piecewise
        # smooth psi'', and smearing across a kink only averages the
        # one-sided values, which the recorded sup dominates anyway
        d2 = (
            domain.profile.value(t + h)
            - 2.0 * domain.profile.value(t)
            + domain.profile.value(t - h)
        ) / h**2
        worst = min(worst, domain.ball_curvature_sup - d2)
    return worst
