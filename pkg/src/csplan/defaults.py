"""Tuned per-domain defaults.

None of these are fundamental: they are desk-scale values chosen so the
default sparse graph is connected over an empty workspace, passages stay
wider than twice the edge-check resolution, and the planners behave well
on the generated corpora.  Everything is overridable via config or CLI.
"""

R2 = {
    "sparse_n": 150,
    "connect_radius": 1.6,
    # half the generator's wall thickness: rules out edge checks tunneling
    "edge_resolution": 0.125,
    "r_critical": 2.4,
    "source_sep": 2.4,
    "threshold": 0.4,
    "step_size": 0.8,
    "r_init": 4.8,
    "lambda": 1.5,
    "M": 100,
    "timeout_s": 5.0,
    "dense_n": 3000,
    "dense_radius": 0.55,
    "bridge_attempts": 4000,
    "bridge_len": 1.2,
    "proposal_count": 60,
}

R7 = {
    "sparse_n": 250,
    "connect_radius": 4.0,
    # keeps the largest per-step workspace sweep below the shelf thickness
    "edge_resolution": 0.025,
    "r_critical": 6.0,
    "source_sep": 6.0,
    "threshold": 0.4,
    "step_size": 0.7,
    "r_init": 12.0,
    "lambda": 1.5,
    "M": 100,
    "timeout_s": 12.0,
    "dense_n": 800,
    "dense_radius": 3.0,
    "bridge_attempts": 4000,
    "bridge_len": 1.5,
    "proposal_count": 60,
}


def for_domain(domain: str) -> dict:
    if domain == "r2-point":
        return dict(R2)
    if domain == "r7-arm":
        return dict(R7)
    raise ValueError(f"unknown domain {domain!r}")
