import numpy as np
import pytest

from conftest import random_curvature_tensor, sample_from_R
from spinbound.curvature import (CurvatureError, GridData, ManifoldSpec,
                                 catalog_samples, conformal_scalar_curvature,
                                 conformal_torus_grid, grid_differentiate,
                                 parse_grid_text, read_grid_file, ricci_weyl_split,
                                 sphere_sample, torus_sample, weyl_tensor,
                                 write_grid_file)


def test_sphere_sample_values():
    s = sphere_sample(4, 1.0)
    assert np.allclose(s.Ric, 3.0 * np.eye(4))
    assert s.S == pytest.approx(12.0)
    s = ricci_weyl_split(s)
    assert np.abs(s.W).max() < 1e-12
    assert max(s.symmetry_residuals().values()) < 1e-12
    assert s.norms()["R2"] == pytest.approx(2 * 4 * 3)  # 2 n (n-1) / r^4


def test_sphere_scaling():
    s = sphere_sample(5, 2.0)
    assert s.S == pytest.approx(5 * 4 / 4.0)
    assert np.allclose(s.Ric, np.eye(5))


def test_torus_sample_flat():
    s = torus_sample(3)
    assert s.S == 0.0
    assert np.abs(s.R).max() == 0.0


def test_product_s2xs2():
    spec = ManifoldSpec.from_dict({
        "kind": "product",
        "factors": [{"kind": "sphere", "n": 2, "r": 1.0},
                    {"kind": "sphere", "n": 2, "r": 1.0}],
    })
    s = catalog_samples(spec)[0]
    assert s.S == pytest.approx(4.0)
    assert s.norms()["R2"] == pytest.approx(8.0)
    assert s.norms()["W2"] == pytest.approx(16.0 / 3.0)
    assert max(s.symmetry_residuals().values()) < 1e-12


def test_weyl_zero_for_n3():
    rng = np.random.default_rng(0)
    R = random_curvature_tensor(3, rng)
    s = sample_from_R(R)
    assert np.abs(s.W).max() == 0.0
    with pytest.raises(CurvatureError):
        weyl_tensor(np.zeros((2, 2, 2, 2)), np.zeros((2, 2)), 0.0)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_random_tensor_symmetries_and_decomposition(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        s = sample_from_R(random_curvature_tensor(n, rng))
        res = s.symmetry_residuals()
        assert max(res.values()) < 1e-12
        # Weyl part is totally trace free
        assert float(np.abs(np.einsum("ikkj->ij", s.W)).max()) < 1e-12


def test_conformal_scalar_curvature_oracle():
    n, a = 3, 0.05
    spec = ManifoldSpec.from_dict({"kind": "conformal_torus", "n": n, "amplitude": a})
    samples = catalog_samples(spec)
    dims = (24, 5, 5)
    x1 = np.arange(24) * (2 * np.pi / 24)
    S_exact = conformal_scalar_curvature(n, a, x1)
    per = dims[1] * dims[2]
    err = max(abs(s.S - S_exact[s.id // per]) for s in samples)
    assert err < 2e-4


def test_grid_refinement_ratio():
    n, a = 3, 0.05
    errs = []
    for m in (24, 48):
        grid = conformal_torus_grid(n, amplitude=a, nodes=[m, 1, 1])
        samples = grid_differentiate(ManifoldSpec(kind="grid", grid=grid))
        x1 = np.arange(m) * (2 * np.pi / m)
        S_exact = conformal_scalar_curvature(n, a, x1)
        errs.append(max(abs(s.S - S_exact[s.id]) for s in samples))
    assert errs[0] / errs[1] > 3.5


def test_grid_file_roundtrip(tmp_path):
    grid = conformal_torus_grid(2, amplitude=0.1, nodes=[8, 1])
    path = tmp_path / "grid.txt"
    write_grid_file(str(path), grid)
    back = read_grid_file(str(path))
    assert back.dims == grid.dims
    assert back.h == grid.h
    assert np.allclose(back.metric, grid.metric, atol=0, rtol=0)


def test_grid_rejects_bad_metric():
    bad = GridData(dims=(5,), h=0.1, metric=np.zeros((5, 2, 2)), periodic=(True,))
    with pytest.raises(CurvatureError):
        grid_differentiate(ManifoldSpec(kind="grid", grid=bad))  # not positive definite
    asym = np.tile(np.array([[1.0, 0.3], [0.1, 1.0]]), (5, 1, 1))
    with pytest.raises(CurvatureError):
        grid_differentiate(ManifoldSpec(
            kind="grid", grid=GridData(dims=(5,), h=0.1, metric=asym, periodic=(True,))))


def test_parse_grid_text_errors():
    with pytest.raises(CurvatureError):
        parse_grid_text("")
    with pytest.raises(CurvatureError):
        parse_grid_text("2 2 2 0.1 1 0\n1 0 1\n1 0 1\n1 0 1\n1 0 1\n")  # aperiodic axis
    with pytest.raises(CurvatureError):
        parse_grid_text("2 1 1 0.1 1 1\n1 0\n")  # wrong component count


def test_spec_requires_kind():
    with pytest.raises(CurvatureError):
        ManifoldSpec.from_dict({"n": 4})
