import math

import numpy as np
import pytest

from conftest import SEEDS, random_state
from noisevol import (
    BeamSplitter,
    ModeSpec,
    NoiseMatrix,
    apply,
    bs_symplectic,
    build_fig1,
    evolve,
    from_complex,
    log_negativity,
    make_state,
    max_extractable_en,
    min_mode_noise,
    mu_volume,
    noise_area_change,
    pt_min_eigenvalue,
    smnc_volume,
    to_complex,
    vacuum,
    wipe_correlations,
    wipe_single_mode_nonclassicality,
)

R = 0.1


def one_bs(specs, theta):
    return apply(make_state(specs), bs_symplectic(BeamSplitter(0, 1, theta), 2))


def fig1(theta2, r=R):
    return evolve(build_fig1(r, np.pi / 4, theta2))


def test_mu_vacuum():
    mu, per_mode = mu_volume(vacuum(3))
    assert mu == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(per_mode, [1, 1, 1], atol=1e-14)


def test_mu_decoupled_third_mode():
    mu, per_mode = mu_volume(fig1(1e-9))
    assert per_mode[2] == pytest.approx(1.0, abs=1e-9)
    assert mu == pytest.approx(per_mode[0] * per_mode[1], abs=1e-9)


def test_mu_is_product_of_per_mode_values():
    mu, per_mode = mu_volume(fig1(0.6))
    assert max(per_mode) < 1
    assert mu == np.prod(per_mode)


def test_mu_ignores_unentangled_cuts():
    v = make_state([ModeSpec("thermal", nbar=0.5), ModeSpec("thermal", nbar=1.0)])
    mu, per_mode = mu_volume(v)
    assert mu == 1.0
    assert per_mode == pytest.approx([2.0, 2.0], abs=1e-12)


def test_mu_smaller_at_balanced_split():
    assert mu_volume(fig1(np.pi / 4))[0] < mu_volume(fig1(np.pi / 8))[0]


def test_log_negativity():
    assert log_negativity(1.0) == 0.0
    assert log_negativity(2.0) == 0.0
    assert log_negativity(math.exp(-0.2)) == pytest.approx(0.1 / math.log(2), abs=1e-15)
    assert log_negativity(math.exp(-0.2)) == pytest.approx(0.144269504089, abs=1e-11)
    with pytest.raises(ValueError):
        log_negativity(0.0)


def test_wipe_single_mode_on_product():
    v = make_state([ModeSpec("squeezed_vacuum", r=0.2), ModeSpec("thermal", nbar=2),
                    ModeSpec("squeezed_vacuum", r=0.5, squeeze_phase=1.0)])
    assert wipe_single_mode_nonclassicality(v) == vacuum(3)


@pytest.mark.parametrize("seed", SEEDS)
def test_wipes_idempotent_and_complementary(seed):
    v, _ = random_state(np.random.default_rng(seed), 3)
    w = wipe_single_mode_nonclassicality(v)
    c = wipe_correlations(v)
    assert wipe_single_mode_nonclassicality(w) == w
    assert wipe_correlations(c) == c
    assert wipe_correlations(w) == vacuum(3)
    assert wipe_single_mode_nonclassicality(c) == vacuum(3)
    # the same block replacement done in the complex representation
    vc = np.array(to_complex(v).entries)
    for k in range(3):
        vc[2 * k:2 * k + 2, 2 * k:2 * k + 2] = 0.5 * np.eye(2)
    from noisevol import ComplexNoiseMatrix
    via_complex = from_complex(ComplexNoiseMatrix(vc)).entries
    assert np.max(np.abs(via_complex - w.entries)) <= 1e-12 * max(1, np.max(np.abs(v.entries)))


def test_wipe_single_mode_keeps_vacuum_blocks():
    v = NoiseMatrix(np.array([[0.5, 0, 0.1, 0], [0, 0.5, 0, -0.1],
                              [0.1, 0, 0.5, 0], [0, -0.1, 0, 0.5]]))
    assert wipe_single_mode_nonclassicality(v) == v


def test_wipe_correlations_block_diagonal_unchanged():
    v = make_state([ModeSpec("squeezed_vacuum", r=0.3), ModeSpec("thermal", nbar=0.2)])
    assert wipe_correlations(v) == v


def test_one_bs_local_noise():
    v = one_bs([ModeSpec("squeezed_vacuum", r=R), ModeSpec()], np.pi / 4)
    local = wipe_correlations(v)
    expected = (math.exp(-2 * R) + 1) / 2
    assert min_mode_noise(local, 0) == pytest.approx(expected, abs=1e-14)
    assert min_mode_noise(local, 1) == pytest.approx(expected, abs=1e-14)
    assert expected == pytest.approx(0.909365376539, abs=1e-11)


def test_fig1_modes_keep_some_squeezing():
    local = wipe_correlations(fig1(np.pi / 4))
    assert all(min_mode_noise(local, k) < 1 for k in range(3))


def test_smnc_volume_values():
    assert smnc_volume(make_state([ModeSpec("thermal", nbar=1), ModeSpec()]))[0] == 1.0
    vol, taus = smnc_volume(make_state([ModeSpec("squeezed_vacuum", r=R)]))
    assert vol == pytest.approx(math.exp(-0.2), abs=1e-14)
    assert taus[0] == pytest.approx((1 - math.exp(-0.2)) / 2, abs=1e-14)


def test_smnc_volume_rises_with_conversion():
    assert smnc_volume(fig1(np.pi / 4))[0] > smnc_volume(fig1(1e-6))[0]


def test_noise_area_change():
    sq = [ModeSpec("squeezed_vacuum", r=R), ModeSpec()]
    v_in = make_state(sq)
    assert noise_area_change(v_in, v_in) == 0.0
    lam = (math.exp(-2 * R) + 1) / 2
    expected = math.log2(lam * lam) - math.log2(math.exp(-2 * R))
    s_n = noise_area_change(v_in, one_bs(sq, np.pi / 4))
    assert s_n == pytest.approx(expected, abs=1e-13)
    assert s_n == pytest.approx(0.0144029694173, abs=1e-11)
    with pytest.raises(ValueError):
        noise_area_change(vacuum(3), vacuum(3))


@pytest.mark.parametrize("r", [0.05, 0.1, 0.5])
def test_noise_area_never_decreases(r):
    sq = [ModeSpec("squeezed_vacuum", r=r), ModeSpec()]
    for theta in np.linspace(0, np.pi, 101):
        assert noise_area_change(make_state(sq), one_bs(sq, theta)) >= -1e-12


def test_max_extractable_en():
    assert max_extractable_en(vacuum(2)) == 0.0
    v = make_state([ModeSpec("squeezed_vacuum", r=R), ModeSpec()])
    assert max_extractable_en(v) == pytest.approx(0.144269504089, abs=1e-11)
    nbar = (math.exp(0.2) - 1) / 2
    for extra in (0.0, 1e-6, 0.5):
        v = make_state([ModeSpec("squeezed_vacuum", r=R), ModeSpec("thermal", nbar=nbar + extra)])
        assert max_extractable_en(v) == 0.0
    with pytest.raises(ValueError):
        max_extractable_en(vacuum(1))


@pytest.mark.parametrize("seed", range(50))
def test_log_negativity_below_input_bound(seed):
    rng = np.random.default_rng(seed)
    specs = [ModeSpec("squeezed_vacuum", r=rng.uniform(0, 1), squeeze_phase=rng.uniform(0, np.pi)),
             rng.choice([ModeSpec(), ModeSpec("thermal", nbar=rng.uniform(0, 1)),
                         ModeSpec("squeezed_vacuum", r=rng.uniform(0, 1),
                                  squeeze_phase=rng.uniform(0, np.pi))])]
    bound = max_extractable_en(make_state(specs))
    for theta in np.linspace(0, np.pi, 25):
        en = log_negativity(pt_min_eigenvalue(one_bs(specs, theta), 0))
        assert en <= bound + 1e-9


def test_thermal_threshold_crossing():
    def gap(nbar):
        v = one_bs([ModeSpec("squeezed_vacuum", r=R), ModeSpec("thermal", nbar=nbar)], np.pi / 4)
        return pt_min_eigenvalue(v, 0) - 1.0

    lo, hi = 0.0, 1.0
    assert gap(lo) < 0 < gap(hi)
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if gap(mid) < 0 else (lo, mid)
    assert 0.5 * (lo + hi) == pytest.approx((math.exp(2 * R) - 1) / 2, abs=1e-6)


@pytest.mark.parametrize("seed", range(20))
def test_classical_inputs_have_unit_smnc(seed):
    rng = np.random.default_rng(seed)
    v = make_state([ModeSpec("thermal", nbar=x) for x in rng.uniform(0, 2, 3)])
    for _ in range(4):
        a, b = rng.choice(3, 2, replace=False)
        v = apply(v, bs_symplectic(BeamSplitter(int(a), int(b), rng.uniform(0, np.pi)), 3))
    assert abs(smnc_volume(v)[0] - 1.0) <= 1e-12


def test_selective_wipe():
    v = one_bs([ModeSpec("thermal", nbar=1.0), ModeSpec("squeezed_vacuum", r=0.2)], 0.3)
    w = wipe_single_mode_nonclassicality(v, only_nonclassical=True)
    assert min_mode_noise(v, 0) >= 1 > min_mode_noise(v, 1)
    np.testing.assert_array_equal(w.block(0), v.block(0))
    np.testing.assert_array_equal(w.block(1), 0.5 * np.eye(2))
    np.testing.assert_array_equal(w.block(0, 1), v.block(0, 1))
    # the paper's scenario: every output mode is squeezed, so both wipes agree
    f = fig1(0.5)
    assert wipe_single_mode_nonclassicality(f, True) == wipe_single_mode_nonclassicality(f)
