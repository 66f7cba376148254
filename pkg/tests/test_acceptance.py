"""Acceptance checklist.

One test per numbered criterion; the conftest hooks print a PASS/FAIL line
per criterion at the end of the run.  Tolerances are deliberately pinned
inline -- they are part of the contract, do not loosen them.
"""

import numpy as np
import pytest

from multiport import (
    BsParams,
    Context,
    ContextGraph,
    MzParams,
    ObservableSpec,
    Ray,
    TParams,
    analyzer_unitary,
    bell_state,
    bridge_params,
    builtin_graph,
    complete_to_unitary,
    decompose,
    equal_up_to_global_phase,
    identity_spec,
    links_between,
    named_gate,
    netlist_from_factorization,
    predict_ports,
    qutrit2_singlet,
    qutrit3_singlet,
    random_unitary,
    reconstruct,
    rotation_plane,
    simulate,
    t_bs,
    t_matrix,
    t_mz,
    t_mz_product,
    tensor_observable,
    unitarity_deviation,
    validate_context_graph,
    verify_eigenbasis,
)

import refdata

PM = (1.0, -1.0)
PZM = (1.0, 0.0, -1.0)


def qubit_e(labels=PM):
    return ObservableSpec(dim=2, rotation=None, labels=labels)


def qubit_f(labels=PM):
    return ObservableSpec(dim=2, rotation=refdata.ROT2_Q, labels=labels)


def qutrit_e(labels=PZM):
    return ObservableSpec(dim=3, rotation=None, labels=labels)


def qutrit_f(labels=PZM):
    return ObservableSpec(dim=3, rotation=refdata.ROT3_12_Q, labels=labels)


def qutrit_g(labels=PZM):
    return ObservableSpec(dim=3, rotation=refdata.ROT3_23_Q, labels=labels)


def rows_match_as_sets(a, b, tol):
    """Bijective row matching within ``tol`` (order-insensitive equality)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    unused = list(range(b.shape[0]))
    for i in range(a.shape[0]):
        hit = next((j for j in unused
                    if np.max(np.abs(a[i] - b[j])) <= tol), None)
        if hit is None:
            return False
        unused.remove(hit)
    return True


def test_c01_counterdiagonal_analyzer_on_singlet():
    an = analyzer_unitary([qubit_e(), identity_spec(2)])
    dist = predict_ports(an, bell_state(4))
    want = np.array([0.0, 0.5, 0.5, 0.0])
    assert np.max(np.abs(np.asarray(dist.probabilities) - want)) <= 1e-12


def test_c02_joint_analyzer_flat_distribution_and_row_set():
    u12 = analyzer_unitary([qubit_e(), qubit_f()])
    dist = predict_ports(u12, bell_state(4))
    assert np.max(np.abs(np.asarray(dist.probabilities) - 0.25)) <= 1e-12

    u2 = analyzer_unitary([identity_spec(2), qubit_f()])
    assert rows_match_as_sets(u12.matrix, u2.matrix, 1e-12)


def test_c03_theta_sweep_port_law():
    worst = 0.0
    for theta in np.linspace(0.0, np.pi, 32):
        f_theta = ObservableSpec(dim=2,
                                 rotation=rotation_plane(2, (1, 2), theta),
                                 labels=PM)
        an = analyzer_unitary([qubit_e(), f_theta])
        p = np.asarray(predict_ports(an, bell_state(4)).probabilities)
        s2 = 0.5 * np.sin(theta) ** 2
        c2 = 0.5 * np.cos(theta) ** 2
        want = np.array([s2, c2, c2, s2])
        worst = max(worst, float(np.max(np.abs(p - want))))
    assert worst <= 1e-12


def test_c04_qutrit_singlet_distribution_and_amplitudes():
    an = analyzer_unitary([identity_spec(3), qutrit_f()])
    dist = predict_ports(an, qutrit2_singlet())
    want = np.array([0, 1 / 6, 1 / 6, 0, 1 / 6, 1 / 6, 1 / 3, 0, 0])
    assert np.max(np.abs(np.asarray(dist.probabilities) - want)) <= 1e-12
    # printed amplitude column, compared up to per-entry sign conventions
    got_abs = np.abs(np.asarray(dist.amplitudes))
    assert np.max(np.abs(got_abs - np.abs(refdata.PHI_OUT))) <= 1e-12


def test_c05_reference_matrices_rebuilt_exactly():
    u1 = analyzer_unitary([qubit_e(), identity_spec(2)]).matrix
    assert np.max(np.abs(u1 - refdata.U1_4)) == 0.0

    u2_4 = analyzer_unitary([identity_spec(2), qubit_f()]).matrix
    assert np.max(np.abs(u2_4 - refdata.U2_4)) == 0.0

    u2_9 = analyzer_unitary([identity_spec(3), qutrit_f()]).matrix
    assert np.max(np.abs(u2_9 - refdata.U2_9)) == 0.0

    # the preparation matrices are validated as data: unitary, with the
    # prepared state exactly in the first column
    assert np.max(np.abs(refdata.UP_4[:, 0] - bell_state(4))) == 0.0
    assert np.max(np.abs(refdata.UP_9[:, 0] - qutrit2_singlet())) == 0.0
    assert unitarity_deviation(refdata.UP_4) <= 1e-15
    assert unitarity_deviation(refdata.UP_9) <= 1e-15


def test_c06_seeded_round_trips_and_factor_bound():
    for n in (2, 3, 4, 9, 27):
        u = random_unitary(n, 20_000 + n)
        f = decompose(u)
        assert len(f.factors) <= n * (n - 1) // 2
        assert np.max(np.abs(reconstruct(f) - u)) <= 1e-10


def test_c07_preparation_netlists_hit_both_singlets():
    for target, u_p in ((bell_state(4), refdata.UP_4),
                        (qutrit2_singlet(), refdata.UP_9)):
        nl = netlist_from_factorization(decompose(u_p))
        first_port = np.zeros(target.size, dtype=np.complex128)
        first_port[0] = 1.0
        out = simulate(nl, first_port)
        assert equal_up_to_global_phase(out, target, 1e-10)


def test_c08_bridges_and_gate_identities():
    omegas = np.linspace(0.0, np.pi / 2, 16)
    phis = np.linspace(-np.pi, np.pi, 16)
    worst_bs = worst_mz = worst_prod = 0.0
    for w in omegas:
        for f in phis:
            p = TParams(w, f)
            target = t_matrix(p)
            pbs, pmz = bridge_params(p)
            worst_bs = max(worst_bs, float(np.max(np.abs(t_bs(pbs) - target))))
            worst_mz = max(worst_mz, float(np.max(np.abs(t_mz(pmz) - target))))
            worst_prod = max(worst_prod,
                             float(np.max(np.abs(t_mz(pmz) - t_mz_product(pmz)))))
    assert worst_bs <= 1e-13
    assert worst_mz <= 1e-13
    assert worst_prod <= 1e-14

    s = named_gate("sqrt_i2")
    assert np.max(np.abs(s @ s - np.eye(2))) <= 1e-14
    r = named_gate("sqrt_not")
    assert np.max(np.abs(r @ r - named_gate("not"))) <= 1e-14

    # closed form vs element product away from the bridge image too
    for w in np.linspace(0.0, np.pi, 7):
        for b in np.linspace(-np.pi, np.pi, 7):
            p = MzParams(alpha=1.1, beta=b, omega=w, phi=-2.2)
            assert np.max(np.abs(t_mz(p) - t_mz_product(p))) <= 1e-14


def test_c09_single_sided_observables_commute():
    def worst_pairwise(mats):
        worst = 0.0
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                comm = mats[i] @ mats[j] - mats[j] @ mats[i]
                worst = max(worst, float(np.max(np.abs(comm))))
        return worst

    two_qubit = [
        tensor_observable([qubit_e(), identity_spec(2)]).matrix,
        tensor_observable([identity_spec(2), qubit_f()]).matrix,
    ]
    assert worst_pairwise(two_qubit) <= 1e-13

    two_qutrit = [
        tensor_observable([qutrit_e(), identity_spec(3)]).matrix,
        tensor_observable([identity_spec(3), qutrit_f()]).matrix,
    ]
    assert worst_pairwise(two_qutrit) <= 1e-13

    three_qutrit = [
        tensor_observable([qutrit_e(), identity_spec(3), identity_spec(3)]).matrix,
        tensor_observable([identity_spec(3), qutrit_f(), identity_spec(3)]).matrix,
        tensor_observable([identity_spec(3), identity_spec(3), qutrit_g()]).matrix,
    ]
    assert three_qutrit[0].shape == (27, 27)
    assert worst_pairwise(three_qutrit) <= 1e-13


def test_c10_determinant_identity_under_collective_rotations():
    psi = bell_state(4)
    worst = 0.0
    for seed in range(50):
        u = random_unitary(2, seed)
        out = np.kron(u, u) @ psi
        worst = max(worst, float(np.max(np.abs(out - np.linalg.det(u) * psi))))
    assert worst <= 1e-10

    delta = qutrit3_singlet()
    worst = 0.0
    for seed in range(50):
        u = random_unitary(3, 100 + seed)
        out = np.kron(np.kron(u, u), u) @ delta
        worst = max(worst,
                    float(np.max(np.abs(out - np.linalg.det(u) * delta))))
    assert worst <= 1e-10


def test_c11_links_and_six_label_rejection():
    # two rotated tripods share exactly the (0,0,1) ray
    g2 = builtin_graph("two-tripods")
    assert validate_context_graph(g2).ok
    pairs = links_between(g2.contexts[0], g2.contexts[1])
    assert len(pairs) == 1
    np.testing.assert_array_equal(pairs[0][0].vector, [0.0, 0.0, 1.0])
    np.testing.assert_array_equal(pairs[0][1].vector, [0.0, 0.0, 1.0])

    # the three-context chain validates, with its two designed links
    g3 = builtin_graph("three-chain")
    assert validate_context_graph(g3).ok
    e, f, g = g3.contexts
    assert len(links_between(e, f)) == 1
    assert len(links_between(e, g)) == 1
    assert links_between(f, g) == []

    # no concrete realization of {A,B,C}, {A,D,K}, {K,L,C} with six
    # distinct labels survives validation
    e3 = np.eye(3)
    h = refdata.H

    def tripod(name, vectors, labels):
        return Context(name=name, rays=tuple(
            Ray(label=lab, vector=v) for lab, v in zip(labels, vectors)))

    first = tripod("E", e3, ["B", "C", "A"])  # A is the e3 leg, as linked

    # literal reuse of the named rays: K and C are not orthogonal, and the
    # ray completing them coincides with A
    second = tripod("F", [np.array([h, h, 0]), np.array([-h, h, 0]), e3[2]],
                    ["D", "K", "A"])
    third = tripod("G", [second.rays[1].vector,
                         np.array([0.0, 0.0, -1.0]), e3[1]],
                   ["K", "L", "C"])
    assert not validate_context_graph(
        ContextGraph(contexts=(first, second, third))).ok

    # honest orthonormal completions instead force label collisions: any
    # tripod through K must reuse the other two legs of F up to rotation in
    # the plane orthogonal to K, and the deterministic completion lands on
    # the rays already named D and A
    for t in np.linspace(0.05, np.pi / 2, 17):
        r = rotation_plane(3, (1, 2), t)
        ctx2 = tripod("F", [r.T[:, 0], r.T[:, 1], e3[2]], ["D", "K", "A"])
        comp = complete_to_unitary(ctx2.rays[1].vector, 0)
        ctx3 = tripod("G", [comp[:, 0], comp[:, 1], comp[:, 2]],
                      ["K", "L", "C"])
        report = validate_context_graph(
            ContextGraph(contexts=(first, ctx2, ctx3)))
        assert not report.ok, f"six-label realization at t={t} not rejected"


def test_c12_analyzers_diagonalize_with_stated_eigenvalues():
    obs_o2 = tensor_observable([identity_spec(2), qubit_f()])
    an_o2 = analyzer_unitary([identity_spec(2), qubit_f()])
    diag = verify_eigenbasis(obs_o2, an_o2)
    np.testing.assert_allclose(diag, [-1.0, 1.0, -1.0, 1.0], atol=1e-10)

    obs_o12 = tensor_observable([qubit_e(), qubit_f()])
    an_o12 = analyzer_unitary([qubit_e(), qubit_f()])
    assert rows_match_as_sets(an_o12.matrix, refdata.U2_4, 1e-12)
    diag = verify_eigenbasis(obs_o12, an_o12)
    np.testing.assert_allclose(diag, [1.0, -1.0, -1.0, 1.0], atol=1e-10)

    parts = [qutrit_e(), qutrit_f(), qutrit_g()]
    obs_o123 = tensor_observable(parts)
    an_o123 = analyzer_unitary(parts)
    diag = verify_eigenbasis(obs_o123, an_o123)
    want = np.array([np.prod(row) for row in an_o123.outcome_labels])
    assert diag.shape == (27,)
    assert np.max(np.abs(diag - want)) <= 1e-10
    assert want[0] == -1.0  # reversed order starts at labels (-1,-1,-1)
