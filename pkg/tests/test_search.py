"""Scan drivers, eigenpath tracking, crossing refinement, hull spectra."""
import cmath
import json
import math

import numpy as np
import pytest

from dsregion.permgroup import (
    Permutation,
    format_cycles,
    inequivalent_pairs,
    parse_cycles,
)
from dsregion.region import RegionPM, pm_signed_distance_many
from dsregion.search import (
    CheckpointMismatchError,
    NoCrossingError,
    hull_spectrum_scan,
    refine_crossing,
    reports_document,
    scan_census,
    scan_tuples,
    track_eigenpath,
)
from dsregion.spectra import ScanConfig, pair_grid_spectra

EXC_SIGMA = "(145)(23)"
EXC_TAU = "(1425)"


@pytest.fixture(scope="module")
def census5():
    return inequivalent_pairs(5)


class TestScanCensus:
    def test_n5_flags_exactly_the_exceptional_class(self, census5):
        reports = scan_census(census5, ScanConfig(mesh_size=15), workers=1)
        assert len(reports) == 1
        rep = reports[0]
        cls = census5.classes[rep.class_index]
        assert cls.type_sigma.parts == (4, 1)
        assert cls.type_tau.parts == (3, 2)
        assert rep.max_violation > 0
        assert rep.witness.value.imag > 0

    def test_n4_is_clean(self):
        census = inequivalent_pairs(4)
        assert scan_census(census, ScanConfig(mesh_size=101), workers=1) == []

    def test_witness_recomputes(self, census5):
        reports = scan_census(census5, ScanConfig(mesh_size=15), workers=1)
        rep = reports[0]
        cls = census5.classes[rep.class_index]
        t = rep.witness.weights[0]
        m = 15
        grid, eigs = pair_grid_spectra(cls.sigma, cls.tau, m)
        row = int(np.argmin(np.abs(grid - t)))
        assert abs(grid[row] - t) < 1e-12
        nearest = eigs[row][np.argmin(np.abs(eigs[row] - rep.witness.value))]
        assert abs(nearest - rep.witness.value) < 1e-9
        sd = pm_signed_distance_many(RegionPM(5), np.array([nearest]))[0]
        assert sd > 0

    def test_parallel_matches_serial(self, census5):
        serial = scan_census(census5, ScanConfig(mesh_size=31), workers=1)
        parallel = scan_census(census5, ScanConfig(mesh_size=31), workers=2)
        doc_s = reports_document(serial, n=5, mesh=31, tuple_order=2)
        doc_p = reports_document(parallel, n=5, mesh=31, tuple_order=2)
        assert json.dumps(doc_s, sort_keys=True) == json.dumps(doc_p, sort_keys=True)

    def test_rejects_tuple_order(self, census5):
        with pytest.raises(ValueError):
            scan_census(census5, ScanConfig(mesh_size=11, tuple_order=3))

    def test_cloud_sink_receives_upper_half_points(self, census5):
        chunks = []
        scan_census(
            census5, ScanConfig(mesh_size=5), workers=1, cloud_sink=chunks.append
        )
        cloud = np.concatenate(chunks)
        assert cloud.shape[1] == 4
        assert (cloud[:, 3] >= 0).all()
        assert len(np.unique(cloud[:, 0])) == 98


class TestCheckpoint:
    def test_resume_is_byte_identical(self, census5, tmp_path):
        ck = tmp_path / "scan.ckpt"
        full = scan_census(
            census5, ScanConfig(mesh_size=21), workers=1,
            checkpoint_path=str(ck), block_size=16,
        )
        doc_full = json.dumps(
            reports_document(full, n=5, mesh=21, tuple_order=2), sort_keys=True
        )
        # keep the header and the first three completed blocks, then resume
        lines = ck.read_text().splitlines()
        ck.write_text("\n".join(lines[:4]) + "\n")
        resumed = scan_census(
            census5, ScanConfig(mesh_size=21), workers=1,
            checkpoint_path=str(ck), block_size=16,
        )
        doc_resumed = json.dumps(
            reports_document(resumed, n=5, mesh=21, tuple_order=2), sort_keys=True
        )
        assert doc_resumed == doc_full

    def test_mismatched_config_refused(self, census5, tmp_path):
        ck = tmp_path / "scan.ckpt"
        scan_census(
            census5, ScanConfig(mesh_size=21), workers=1, checkpoint_path=str(ck)
        )
        with pytest.raises(CheckpointMismatchError):
            scan_census(
                census5, ScanConfig(mesh_size=23), workers=1, checkpoint_path=str(ck)
            )


class TestTrackEigenpath:
    def test_constant_pair(self):
        p = parse_cycles("(12345)", 5)
        paths = track_eigenpath(p, p, np.linspace(0, 1, 21))
        for path in paths:
            assert np.max(np.abs(path.values - path.values[0])) < 1e-12

    def test_linear_branch_identity_to_cycle(self):
        c = parse_cycles("(123)", 3)
        grid = np.linspace(0, 1, 41)
        paths = track_eigenpath(Permutation.identity(3), c, grid)
        w = cmath.exp(2j * math.pi / 3)
        # one branch follows t + (1-t)*w exactly (identity has weight t)
        target = grid + (1 - grid) * w
        best = min(paths, key=lambda p: np.max(np.abs(p.values - target)))
        assert np.max(np.abs(best.values - target)) < 1e-9

    def test_exceptional_branch_endpoints(self):
        sigma = parse_cycles(EXC_SIGMA, 5)
        tau = parse_cycles(EXC_TAU, 5)
        grid = np.linspace(0, 1, 101)
        paths = track_eigenpath(sigma, tau, grid)
        # the upper-half branch runs from i (4-cycle end) to exp(2*pi*i/3)
        w3 = cmath.exp(2j * math.pi / 3)
        hit = [
            p
            for p in paths
            if abs(p.values[0] - 1j) < 1e-9 and abs(p.values[-1] - w3) < 1e-9
        ]
        assert len(hit) == 1

    def test_rejects_unsorted_grid(self):
        p = Permutation.identity(3)
        with pytest.raises(ValueError):
            track_eigenpath(p, p, [0.5, 0.2, 1.0])


class TestRefineCrossing:
    def test_exceptional_interval(self):
        interval = refine_crossing(
            parse_cycles(EXC_SIGMA, 5), parse_cycles(EXC_TAU, 5), tol=1e-9
        )
        assert interval.t_low == pytest.approx(0.4705275, abs=1e-5)
        assert interval.t_high == pytest.approx(0.5490013, abs=1e-5)
        assert interval.t_high - interval.t_low > 0.07

    def test_interior_pair_has_no_crossing(self):
        # a class whose paths stay well inside: (12)(345) with (1425)
        with pytest.raises(NoCrossingError):
            refine_crossing(parse_cycles("(12)(345)", 5), parse_cycles(EXC_TAU, 5))

    def test_reversed_pair_reflects_interval(self):
        a = refine_crossing(
            parse_cycles(EXC_SIGMA, 5), parse_cycles(EXC_TAU, 5), tol=1e-10
        )
        b = refine_crossing(
            parse_cycles(EXC_TAU, 5), parse_cycles(EXC_SIGMA, 5), tol=1e-10
        )
        assert b.t_low == pytest.approx(1 - a.t_high, abs=1e-8)
        assert b.t_high == pytest.approx(1 - a.t_low, abs=1e-8)

    def test_branch_hint_selects_conjugate_branch(self):
        lower = refine_crossing(
            parse_cycles(EXC_SIGMA, 5),
            parse_cycles(EXC_TAU, 5),
            branch_hint=-1j,
            tol=1e-9,
        )
        assert lower.t_low == pytest.approx(0.4705275, abs=1e-5)

    def test_bracketing(self):
        interval = refine_crossing(
            parse_cycles(EXC_SIGMA, 5), parse_cycles(EXC_TAU, 5), tol=1e-9
        )
        sigma = parse_cycles(EXC_SIGMA, 5)
        tau = parse_cycles(EXC_TAU, 5)
        region = RegionPM(5)
        grid = np.linspace(0, 1, 2001)
        paths = track_eigenpath(sigma, tau, grid)
        sds = [pm_signed_distance_many(region, p.values) for p in paths]
        b = int(np.argmax([s.max() for s in sds]))
        sd = sds[b]

        def sd_at(t):
            idx = int(np.argmin(np.abs(grid - t)))
            return sd[idx]

        assert sd_at(interval.t_low - 1e-2) < 0
        assert sd_at(0.5 * (interval.t_low + interval.t_high)) > 0
        assert sd_at(interval.t_high + 1e-2) < 0


class TestScanTuples:
    def test_rejects_pairs(self):
        with pytest.raises(ValueError):
            scan_tuples(4, 2, 10)

    def test_n4_triples_clean(self):
        # the n=4 region equals the polygon union, so nothing can get out
        reports = scan_tuples(4, 3, 8, workers=2)
        assert reports == []

    def test_random_sampling_requires_seed(self):
        with pytest.raises(ValueError):
            scan_tuples(5, 3, 10, sampling="random", samples=10)

    def test_n5_triples_stay_within_pair_lobe(self, census5):
        # scaled-down containment run; the acceptance suite does m=40
        pair_reports = scan_census(census5, ScanConfig(mesh_size=101), workers=2)
        pair_max = max(r.max_violation for r in pair_reports)
        reports = scan_tuples(5, 3, 12, workers=2)
        assert reports, "triples do reach outside the region near the lobe"
        assert max(r.max_violation for r in reports) <= pair_max

    def test_sampled_n6_clean(self):
        reports = scan_tuples(
            6, 3, 12, sampling="random", samples=400, seed=99, workers=2
        )
        assert reports == []


class TestHullSpectrum:
    def test_pair_mode_matches_census_point_set(self, census5):
        # the subgroup pair cloud and the census pair cloud agree as sets up
        # to the O(sqrt(eps)) splitting of defective eigenvalues
        from scipy.spatial import cKDTree

        chunks = []
        scan_census(
            census5, ScanConfig(mesh_size=7), workers=1, cloud_sink=chunks.append
        )
        cloud = np.concatenate(chunks)
        census_xy = np.column_stack([cloud[:, 2], np.abs(cloud[:, 3])])
        result = hull_spectrum_scan("symmetric", 5, 2, 6)
        hull_xy = np.column_stack(
            [result.pair_points.real, np.abs(result.pair_points.imag)]
        )
        d1, _ = cKDTree(census_xy).query(hull_xy, k=1)
        d2, _ = cKDTree(hull_xy).query(census_xy, k=1)
        assert d1.max() < 1e-7
        assert d2.max() < 1e-7

    def test_rejects_unknown_group(self):
        with pytest.raises(ValueError):
            hull_spectrum_scan("dihedral", 4, 3, 10)

    def test_alternating_elements_only(self):
        result = hull_spectrum_scan("alternating", 4, 2, 4)
        # pair cloud of A_4: no eigenvalue at the primitive 4th root i
        assert not any(abs(z - 1j) < 1e-6 for z in result.pair_points)

    def test_a4_triples_fill_pair_gaps(self):
        # the genuine phenomenon: triple eigenvalues land far from every
        # pair eigenvalue (the hull certificate stays empty; see ledger)
        result = hull_spectrum_scan("alternating", 4, 3, 30)
        assert result.max_pair_gap > 0.1
        assert result.exterior == []

    def test_a5_sampled_triples_fill_pair_gaps(self):
        result = hull_spectrum_scan(
            "alternating", 5, 3, 20, sampling="random", samples=150, seed=4
        )
        assert result.max_pair_gap > 0.05
