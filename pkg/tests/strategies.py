"""Hypothesis strategies for small random instances."""
import random

from hypothesis import strategies as st

from ggasp.sampling import (
    path_edges,
    random_component_edges,
    random_forest_edges,
    random_instance,
    star_edges,
)


@st.composite
def instances(draw, shape="any", max_n=6, max_p=3, copies=1):
    n = draw(st.integers(1, max_n))
    p = draw(st.integers(1, max_p))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    if shape == "path":
        edges = path_edges(n)
    elif shape == "star":
        edges = star_edges(n)
    elif shape == "forest":
        edges = random_forest_edges(rng, n)
    elif shape == "components":
        sizes, left = [], n
        while left:
            s = rng.randint(1, min(3, left))
            sizes.append(s)
            left -= s
        edges = random_component_edges(rng, sizes, dense=True)
    else:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
    model = draw(st.sampled_from(["bucket", "dense"]))
    q = draw(st.sampled_from([0.2, 0.4, 0.7]))
    c = n if copies == "n" else copies
    return random_instance(rng, n, p, edges, copies=c, model=model, q_approve=q, levels=2)
