"""Hypothesis strategies shared by the property tests."""
from hypothesis import assume, strategies as st

from surfmcg.errors import SurfError
from surfmcg.surface import CombSurface


@st.composite
def schemes(draw, max_labels=5, max_faces=3, connected=True):
    """Random gluing schemes: each label used once (boundary) or twice."""
    n = draw(st.integers(1, max_labels))
    tokens = []
    for i in range(n):
        uses = draw(st.sampled_from([1, 2, 2, 2]))
        tokens += [(f"x{i}", draw(st.booleans())) for _ in range(uses)]
    tokens = draw(st.permutations(tokens))
    k = draw(st.integers(1, min(max_faces, len(tokens))))
    cuts = sorted(draw(st.sets(st.integers(1, len(tokens) - 1), min_size=k - 1,
                               max_size=k - 1))) if k > 1 else []
    bounds = [0] + cuts + [len(tokens)]
    faces = tuple(tuple(tokens[a:b]) for a, b in zip(bounds, bounds[1:]))
    try:
        S = CombSurface(faces, name="random")
    except SurfError:
        assume(False)
    if connected:
        assume(S.is_connected)
    return S


def triangle_loop(T, t):
    """The boundary of a triangle of T, pushed into normal position."""
    from surfmcg.curves import carry_path
    return carry_path(T, list(t.verts) + [t.verts[0]], kind="closed", edges=list(t.edges))
