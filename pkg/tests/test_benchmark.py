from fractions import Fraction

import numpy as np
import pytest

from conftest import random_channel
from mcp_schmidt_benchmark.quantum.benchmark import (
    Certificate,
    GateTask,
    Mode,
    certify,
    certify_from_counts,
    certify_report,
    entangled_fraction,
    fidelity_direct,
    fidelity_via_choi,
    informational_limits,
    measurement_setups,
    process_fidelity,
    process_fidelity_lower_bound,
    report_from_per_state,
    schmidt_number_bracket,
    schmidt_threshold,
    schmidt_threshold_exact,
    threshold_ladder,
    uniform_average_fidelity,
)
from mcp_schmidt_benchmark.quantum.channels import (
    builtin_channel,
    choi,
    compose,
    cnot,
    dephasing,
    depolarizing,
    eb_measure_prepare,
    identity_channel,
    saturating_channel,
    unitary_channel,
)
from mcp_schmidt_benchmark.quantum.errors import (
    DimensionError,
    IndexRangeError,
    ProbabilityRangeError,
    SchemaError,
    UnitarityError,
)
from mcp_schmidt_benchmark.quantum.linalg import haar_unitary
from mcp_schmidt_benchmark.quantum.states import BasisKind, BasisLabel, bell_projector, generalized_pauli


def _labels(d, z_value, x_value):
    return ([(BasisLabel(BasisKind.Z, j), z_value) for j in range(d)]
            + [(BasisLabel(BasisKind.X, j), x_value) for j in range(d)])


def test_thresholds_are_exact():
    assert schmidt_threshold(2, 1) == 0.75
    assert [schmidt_threshold(4, k) for k in (1, 2, 3)] == [0.625, 0.75, 0.875]
    assert schmidt_threshold(8, 7) == 0.9375
    assert schmidt_threshold(5, 5) == 1.0
    assert schmidt_threshold_exact(6, 1) == Fraction(7, 12)
    assert threshold_ladder(4) == [(1, 0.625), (2, 0.75), (3, 0.875)]
    with pytest.raises(IndexRangeError):
        schmidt_threshold(3, 0)
    with pytest.raises(IndexRangeError):
        schmidt_threshold(3, 4)


def test_gate_task_validation():
    with pytest.raises(DimensionError):
        GateTask(1)
    with pytest.raises(DimensionError):
        GateTask(6, mode=Mode.QUBITS)
    with pytest.raises(UnitarityError):
        GateTask(2, target_unitary=np.array([[1, 1], [0, 1]]))
    with pytest.raises(DimensionError):
        GateTask(2, target_unitary=np.eye(3))
    task = GateTask(8, mode="qubits")
    assert task.mode is Mode.QUBITS and task.n_qubits == 3
    labels = [label for label, _ in GateTask(3).input_states()]
    assert [str(label) for label in labels] == ["Z0", "Z1", "Z2", "X0", "X1", "X2"]


@pytest.mark.parametrize("d", [2, 3, 5])
def test_identity_channel_has_unit_fidelity(d):
    task = GateTask(d)
    report = fidelity_direct(identity_channel(d), task)
    assert abs(report.f_avg - 1) < 1e-12
    assert abs(fidelity_via_choi(identity_channel(d), task) - 1) < 1e-12
    assert report.f_avg == (report.f_z + report.f_x) / 2


def test_eb_measure_prepare_reaches_classical_limit():
    report = fidelity_direct(eb_measure_prepare(2), GateTask(2))
    assert abs(report.f_z - 1) < 1e-12
    assert abs(report.f_x - 0.5) < 1e-12
    assert abs(report.f_avg - 0.75) < 1e-12
    for d in (3, 4):
        report = fidelity_direct(eb_measure_prepare(d), GateTask(d))
        assert abs(report.f_x - 1 / d) < 1e-12
        assert abs(report.f_avg - schmidt_threshold(d, 1)) < 1e-12


def test_saturation_both_paths():
    for d in range(2, 7):
        task = GateTask(d)
        for k in range(1, d + 1):
            ch = saturating_channel(d, k)
            target = (1 + k / d) / 2
            assert abs(fidelity_direct(ch, task).f_avg - target) < 1e-12
            assert abs(fidelity_via_choi(ch, task) - target) < 1e-12
    report = fidelity_direct(saturating_channel(4, 2), GateTask(4))
    assert abs(report.f_z - 1) < 1e-12
    assert abs(report.f_x - 0.5) < 1e-12
    assert abs(fidelity_via_choi(saturating_channel(4, 3), GateTask(4)) - 0.875) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_dual_path_equivalence_random_channels(d, rng):
    task = GateTask(d)
    for trial in range(100):
        ch = random_channel(d, 1 + trial % 4, rng)
        assert abs(fidelity_direct(ch, task).f_avg - fidelity_via_choi(ch, task)) < 1e-10


def test_dual_path_with_target_unitary(rng):
    u = haar_unitary(3, rng)
    task = GateTask(3, target_unitary=u)
    ch = random_channel(3, 2, rng)
    assert abs(fidelity_direct(ch, task).f_avg - fidelity_via_choi(ch, task)) < 1e-10
    assert abs(fidelity_direct(unitary_channel(u), task).f_avg - 1) < 1e-12


def test_depolarizing_and_dephasing_fidelities():
    for d, p in ((3, 0.2), (4, 0.1), (5, 0.7)):
        assert abs(fidelity_direct(depolarizing(d, p), GateTask(d)).f_avg - (1 - p * (1 - 1 / d))) < 1e-12
    report = fidelity_direct(dephasing(2, 0.5), GateTask(2))
    assert abs(report.f_z - 1) < 1e-12
    assert abs(report.f_avg - 0.875) < 1e-12


def test_depolarizing_crosses_top_threshold_at_one_sixth():
    task = GateTask(4)
    above = certify_report(fidelity_direct(depolarizing(4, 1 / 6 - 1e-3), task))
    below = certify_report(fidelity_direct(depolarizing(4, 1 / 6 + 1e-3), task))
    assert above.certified_schmidt_number == 4
    assert below.certified_schmidt_number == 3


def test_cnot_ideal_and_depolarized():
    task = GateTask(4, target_unitary=cnot(), mode=Mode.QUBITS)
    ideal = unitary_channel(cnot())
    assert abs(fidelity_direct(ideal, task).f_avg - 1) < 1e-12
    assert abs(fidelity_via_choi(ideal, task) - 1) < 1e-12
    noisy = builtin_channel("cnot-depol:0.1", 4)
    report = fidelity_direct(noisy, task)
    assert abs(report.f_avg - 0.925) < 1e-12
    assert abs(fidelity_via_choi(noisy, task) - 0.925) < 1e-12
    assert certify_report(report).certified_schmidt_number == 4


def test_certify_reported_experiments():
    one = certify(2, 0.90)
    assert one.certified_schmidt_number == 2
    assert one.conclusion() == "outperforms any classical MP scheme"
    assert abs(one.margin - 0.15) < 1e-12

    two = certify(4, 0.86)
    assert two.certified_schmidt_number == 3
    assert "outperforms any channel of Schmidt number 2" in two.conclusion()
    assert "does not ensure outperforming the channels of Schmidt number 3" in two.conclusion()

    three = certify(4, 0.89)
    assert three.certified_schmidt_number == 4
    assert three.conclusion("two-qubit gate") == (
        "outperforms any channel of Schmidt number 3; "
        "ensures the full-dimensional coherence of the demonstrated two-qubit gate"
    )
    assert three.conclusion().endswith("of the demonstrated gate")


def test_certify_is_strict():
    cert = certify(4, 0.625)
    assert cert.certified_schmidt_number == 1
    assert not cert.entanglement_capable
    assert cert.margin == 0.0
    assert certify(4, 0.75).certified_schmidt_number == 2
    assert certify(4, 1.0).certified_schmidt_number == 4
    with pytest.raises(ProbabilityRangeError):
        certify(2, 1.2)


def test_certificate_dict_round_trip():
    cert = certify(4, 0.86)
    assert set(cert.to_dict()) == {"d", "f_avg", "thresholds", "certified_schmidt_number", "margin", "slack"}
    assert Certificate.from_dict(cert.to_dict()) == cert


def test_simulated_certificate_agrees_with_cleared_thresholds():
    for d in range(2, 9):
        task = GateTask(d)
        for k in range(1, d):
            cert = certify_report(fidelity_direct(saturating_channel(d, k), task))
            cleared = [j for j, value in cert.thresholds if cert.clears(value)]
            assert cert.slack > 0
            assert cert.certified_schmidt_number == k
            assert cert.certified_schmidt_number == 1 + max(cleared, default=0)
            assert Certificate.from_dict(cert.to_dict()) == cert
    cert = certify(4, 0.875 + 1e-15)
    assert cert.slack == 0.0 and cert.clears(0.875)


def test_certify_from_counts_examples():
    assert certify_from_counts(2, _labels(2, 1.0, 1.0)).certified_schmidt_number == 2
    assert certify_from_counts(4, _labels(4, 1.0, 0.25)).certified_schmidt_number == 1
    cert = certify_from_counts(4, _labels(4, 1.0, 0.5))
    assert cert.measured_f == 0.75
    assert cert.certified_schmidt_number == 2


def test_certify_from_counts_rejects_bad_labels():
    labels = _labels(2, 1.0, 1.0)
    with pytest.raises(SchemaError):
        certify_from_counts(2, labels + [labels[0]])
    with pytest.raises(SchemaError) as info:
        certify_from_counts(2, labels[1:])
    assert "Z0" in str(info.value)
    with pytest.raises(ProbabilityRangeError):
        certify_from_counts(2, labels[:-1] + [(BasisLabel(BasisKind.X, 1), 1.5)])
    with pytest.raises(IndexRangeError):
        certify_from_counts(2, labels + [(BasisLabel(BasisKind.Z, 2), 1.0)])


def test_report_from_per_state():
    report = report_from_per_state(2, _labels(2, 1.0, 0.5))
    assert (report.f_z, report.f_x, report.f_avg) == (1.0, 0.5, 0.75)
    assert report.to_dict()["per_state"][0] == ["Z0", 1.0]


def test_informational_limits():
    limits = informational_limits(2, 1)
    assert abs(limits.uniform_limit - 2 / 3) < 1e-15
    assert limits.process_limit == 0.5
    assert limits.informational
    assert tuple(informational_limits(5, 5)) == (1.0, 1.0)
    assert tuple(informational_limits(4, 2)) == (0.6, 0.5)


def test_process_fidelity_relations(rng):
    for d in (2, 3, 4):
        task = GateTask(d)
        for trial in range(20):
            ch = random_channel(d, 1 + trial % 3, rng)
            report = fidelity_direct(ch, task)
            f_proc = process_fidelity(ch, task)
            assert f_proc >= process_fidelity_lower_bound(report) - 1e-12
            assert abs(uniform_average_fidelity(ch, task) - (d * f_proc + 1) / (d + 1)) < 1e-12
    assert abs(process_fidelity(identity_channel(3), GateTask(3)) - 1) < 1e-12
    assert abs(process_fidelity(saturating_channel(4, 2), GateTask(4)) - 0.5) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_process_fidelity_lower_bound_on_builtin_channels(d):
    task = GateTask(d)
    zoo = [identity_channel(d), eb_measure_prepare(d), depolarizing(d, 0.3), dephasing(d, 0.4)]
    zoo += [saturating_channel(d, k) for k in range(1, d + 1)]
    for ch in zoo:
        report = fidelity_direct(ch, task)
        assert process_fidelity(ch, task) >= process_fidelity_lower_bound(report) - 1e-12


def test_lower_bound_is_not_f_avg():
    ch = eb_measure_prepare(2)
    report = fidelity_direct(ch, GateTask(2))
    assert abs(report.f_avg - 0.75) < 1e-12
    assert abs(process_fidelity_lower_bound(report) - 0.5) < 1e-12
    assert abs(process_fidelity(ch, GateTask(2)) - 0.5) < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_fidelity_is_unitarily_covariant(d, rng):
    x, z = generalized_pauli(d)
    for trial in range(20):
        ch = random_channel(d, 1 + trial % 3, rng)
        u, target = haar_unitary(d, rng), haar_unitary(d, rng)
        base = fidelity_direct(ch, GateTask(d, target_unitary=target)).f_avg
        rotated = compose(unitary_channel(u), ch)
        assert abs(fidelity_direct(rotated, GateTask(d, target_unitary=u @ target)).f_avg - base) < 1e-10
        # X̂ and Ẑ map each input basis onto itself up to phases
        for v in (x, z, x @ z):
            both = compose(rotated, unitary_channel(v))
            task = GateTask(d, target_unitary=u @ target @ v)
            assert abs(fidelity_direct(both, task).f_avg - base) < 1e-10
            assert abs(fidelity_via_choi(both, task) - base) < 1e-10


def test_entangled_fraction():
    assert abs(entangled_fraction(bell_projector(3, 0, 0), 3) - 1) < 1e-12
    assert abs(entangled_fraction(bell_projector(3, 1, 2), 3)) < 1e-12
    with pytest.raises(DimensionError):
        entangled_fraction(np.eye(4) / 4, 3)


def test_schmidt_number_bracket():
    for d in range(2, 6):
        for k in range(1, d + 1):
            assert tuple(schmidt_number_bracket(saturating_channel(d, k), GateTask(d))) == (k, k)
    lower, upper = schmidt_number_bracket(depolarizing(3, 0.5), GateTask(3))
    assert lower <= upper == 3


def test_near_perfect_fidelity_forces_identity_choi(rng):
    assert abs(fidelity_direct(identity_channel(3), GateTask(3)).f_avg - 1) < 1e-12
    for eps in (1e-13, 1e-14):
        ch = depolarizing(3, eps)
        if fidelity_direct(ch, GateTask(3)).f_avg > 1 - 1e-12:
            assert np.linalg.norm(choi(ch).matrix - bell_projector(3, 0, 0)) < 1e-5


def test_measurement_setups():
    assert measurement_setups(2) == (8, 16)
    assert measurement_setups(4) == (32, 256)
