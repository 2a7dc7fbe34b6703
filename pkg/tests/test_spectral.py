import numpy as np
import pytest

import arcwalk as aw
from arcwalk.spectral import (
    SpectralError,
    eigenstate_node_probability,
)


def grover_dec(name):
    g = aw.builtin(name)
    op = aw.build_walk_operator(g, aw.CoinKind.GROVER)
    return g, aw.decompose(aw.materialize_dense(op))


def test_path2_eigenvalues():
    g = aw.builtin("path(2)")
    op = aw.build_walk_operator(g, aw.CoinKind.FOURIER)
    dec = aw.decompose(aw.materialize_dense(op))
    assert sorted(np.round(dec.eigenvalues.real, 12)) == [-1.0, 1.0]


def test_decompose_rejects_non_unitary():
    with pytest.raises(SpectralError, match="not unitary"):
        aw.decompose(np.diag([1.0, 2.0]))
    with pytest.raises(SpectralError, match="square"):
        aw.decompose(np.ones((2, 3)))


def test_decomposition_invariants(three_fourier_dec, three_community):
    dec = three_fourier_dec
    assert np.abs(np.abs(dec.eigenvalues) - 1.0).max() < 1e-10
    gram = dec.eigenvectors.conj().T @ dec.eigenvectors
    assert np.abs(gram - np.eye(dec.dimension)).max() < 1e-8
    sizes = sorted(len(g) for g in dec.groups)
    assert sizes == [1] * 78  # Fourier spectrum is simple


def test_fourier_karate_non_degenerate(karate_fourier_dec):
    assert max(len(g) for g in karate_fourier_dec.groups) == 1


def test_grover_degeneracies_three_community(three_grover_dec, three_community):
    report = aw.degeneracy_report(three_grover_dec, three_community)
    assert (report.plus_one, report.minus_one) == (20, 18)
    assert report.matches_prediction
    assert sum(mult for _, mult in report.entries) == 78


def test_grover_degeneracies_karate(karate):
    op = aw.build_walk_operator(karate, aw.CoinKind.GROVER)
    dec = aw.decompose(aw.materialize_dense(op))
    report = aw.degeneracy_report(dec, karate)
    assert (report.plus_one, report.minus_one) == (46, 44)
    assert report.matches_prediction


def test_grover_degeneracies_square_triangle():
    g, dec = grover_dec("square_triangle")
    report = aw.degeneracy_report(dec, g)
    assert (report.plus_one, report.minus_one) == (3, 1)
    assert (report.predicted_plus_one, report.predicted_minus_one) == (3, 1)


def test_grover_degeneracies_cycle4():
    g, dec = grover_dec("cycle(4)")
    report = aw.degeneracy_report(dec, g)
    # bipartite, b1 = 1: prediction (2, 2)
    assert (report.predicted_plus_one, report.predicted_minus_one) == (2, 2)
    assert (report.plus_one, report.minus_one) == (2, 2)


@pytest.mark.parametrize("name", ["three_community", "karate", "cycle(5)", "cycle(6)", "path(4)", "complete(4)", "square_triangle"])
def test_betti_prediction_on_builtins(name):
    g, dec = grover_dec(name)
    report = aw.degeneracy_report(dec, g)
    assert report.matches_prediction


@pytest.mark.parametrize("name,kind", [
    ("cycle(6)", aw.CoinKind.FOURIER),
    ("three_community", aw.CoinKind.GROVER),
    ("karate", aw.CoinKind.FOURIER),
])
def test_spectral_reconstruction(name, kind):
    g = aw.builtin(name)
    op = aw.build_walk_operator(g, kind)
    u = aw.materialize_dense(op)
    dec = aw.decompose(u)
    rebuilt = (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.conj().T
    assert np.abs(rebuilt - u).max() < 1e-8


def test_infinite_average_row_matches_matrix(three_fourier_dec, three_community, three_fourier_avg):
    p, norm = three_fourier_avg
    for node in (1, 8, 21):
        row = aw.infinite_time_average(three_fourier_dec, three_community, node)
        assert np.abs(row.probability - p[node - 1]).max() < 1e-12
        assert np.abs(row.normalized - norm[node - 1]).max() < 1e-12


def test_infinite_average_conservation_and_symmetry(three_fourier_avg):
    p, norm = three_fourier_avg
    assert np.abs(p.sum(axis=1) - 1.0).max() < 1e-10
    assert np.abs(norm - norm.T).max() < 1e-10


def test_grover_infinite_average_projector_form(three_grover_dec, three_community):
    # degenerate spectrum: projector Cesaro limit must still conserve
    # probability and stay symmetric after normalization
    p, norm = aw.infinite_time_average_matrix(three_grover_dec, three_community)
    assert np.abs(p.sum(axis=1) - 1.0).max() < 1e-10
    assert np.abs(norm - norm.T).max() < 1e-10


def test_projector_form_equals_naive_sum_when_simple(karate_fourier_dec, karate):
    dec = karate_fourier_dec
    weights = np.abs(dec.eigenvectors) ** 2  # [arc, mu]
    kernel = weights @ weights.T  # naive per-eigenvector double sum
    block = np.add.reduceat(
        np.add.reduceat(kernel, karate.arc_offsets[:-1], axis=0),
        karate.arc_offsets[:-1],
        axis=1,
    )
    naive_p = block.T / karate.degrees[:, None]
    p, _ = aw.infinite_time_average_matrix(dec, karate)
    assert np.abs(p - naive_p).max() < 1e-12


def test_karate_marginal_values(karate_fourier_avg):
    _, norm = karate_fourier_avg
    q = 1.0 / 156
    p_1_20 = norm[0, 19]
    p_34_20 = norm[33, 19]
    assert p_1_20 > p_34_20 > q
    # published magnitudes, neighbor-ordering-dependent: accept within 15 percent
    assert p_1_20 == pytest.approx(0.007062, rel=0.15)
    assert p_34_20 == pytest.approx(0.006451, rel=0.15)


def test_participation_ratio_extremes():
    delta = np.zeros(21)
    delta[3] = 1.0
    assert aw.participation_ratio(delta) == 1.0
    uniform = np.full(21, 1 / 21)
    assert aw.participation_ratio(uniform) == pytest.approx(1 / 21)
    community = np.zeros(21)
    community[:7] = 1 / 7
    assert aw.participation_ratio(community) == pytest.approx(1 / 7)


def test_ipr_bounds(three_fourier_dec, three_community):
    values = aw.ipr(three_fourier_dec, three_community)
    n = three_community.node_count
    assert np.all(values >= 1 / n - 1e-12)
    assert np.all(values <= 1.0 + 1e-12)


def test_eigenstate_profile_normalization(three_fourier_dec, three_community):
    g = three_community
    for mu in (0, 10, 77):
        profile = aw.eigenstate_profile(three_fourier_dec, g, mu)
        assert abs(np.sum(profile * g.degrees) - 1.0) < 1e-10


def test_fourier_eigenstate_localizes_in_community(three_fourier_dec, three_community):
    node_prob = eigenstate_node_probability(three_fourier_dec, three_community)
    communities = [slice(0, 7), slice(7, 14), slice(14, 21)]
    best = max(
        node_prob[mu, c].sum() for mu in range(node_prob.shape[0]) for c in communities
    )
    assert best > 0.6


def test_grover_pm_one_eigenstate_localizes_on_few_nodes(three_grover_dec, three_community):
    dec = three_grover_dec
    node_prob = eigenstate_node_probability(dec, three_community)
    pm_members = [
        mu
        for group in dec.groups
        if len(group) > 1 and abs(abs(np.mean(dec.eigenvalues[group])) - 1) < 1e-6
        for mu in group
    ]
    top4 = [np.sort(node_prob[mu])[::-1][:4].sum() for mu in pm_members]
    assert max(top4) > 0.75


def test_loop_eigenvector_triangle(three_community):
    found = aw.loop_eigenvector(three_community, [1, 2, 3], eigenvalue=1)
    assert found is not None
    state, lam = found
    assert lam == 1
    assert abs(state.norm() - 1.0) < 1e-12
    assert aw.loop_eigenvector(three_community, [1, 2, 3], eigenvalue=-1) is None


def test_loop_eigenvector_square():
    g = aw.builtin("cycle(4)")
    plus = aw.loop_eigenvector(g, [1, 2, 3, 4], eigenvalue=1)
    minus = aw.loop_eigenvector(g, [1, 2, 3, 4], eigenvalue=-1)
    assert plus is not None and plus[1] == 1
    assert minus is not None and minus[1] == -1


def test_loop_eigenvector_explicit_pattern(three_community):
    # alternating signs around the triangle: forward arcs +, reverse arcs -
    found = aw.loop_eigenvector(three_community, [1, 2, 3], sign_pattern=[1, 1, 1, -1, -1, -1])
    assert found is not None and found[1] == 1


def test_loop_eigenvector_rejects_non_cycle(three_community):
    with pytest.raises(aw.GraphError, match="not a cycle"):
        aw.loop_eigenvector(three_community, [1, 2, 9])


def test_argument_histogram_fourier(three_fourier_dec):
    counts, edges = aw.argument_histogram(three_fourier_dec, 20)
    assert counts.sum() == 78
    assert counts.min() > 0
    assert counts.max() <= 3 * counts.mean()


def test_argument_histogram_grover(three_grover_dec):
    counts, edges = aw.argument_histogram(three_grover_dec, 20)
    centers = 0.5 * (edges[:-1] + edges[1:])
    zero_bin = int(np.argmin(np.abs(centers)))
    pi_bin = 0  # -1 eigenvalues are folded into the bin centered at -pi
    assert counts[zero_bin] >= 20
    assert counts[pi_bin] >= 18
    assert counts.sum() == 78


def test_argument_histogram_rejects_single_bin(three_fourier_dec):
    with pytest.raises(ValueError):
        aw.argument_histogram(three_fourier_dec, 1)
