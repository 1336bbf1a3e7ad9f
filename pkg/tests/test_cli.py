import json

import numpy as np
import pytest

import zigzag as zz
from zigzag import io as zio
from zigzag.cli import main


@pytest.fixture(scope="module")
def solved_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("solutions") / "p2.json"
    code = main(["solve", "--genus", "2", "--out", str(path)])
    assert code == 0
    return path


class TestSolve:
    def test_genus1_exit_zero(self, tmp_path):
        out = tmp_path / "p1.json"
        assert main(["solve", "--genus", "1", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["height"] == 0.0
        assert data["converged"] is True

    def test_negative_genus_usage_error(self):
        assert main(["solve", "--genus", "-1"]) == 1

    def test_missing_flag_usage_error(self):
        assert main(["solve"]) == 1

    def test_trace_written(self, tmp_path):
        out = tmp_path / "p2.json"
        trace = tmp_path / "trace.csv"
        assert main(["solve", "--genus", "2", "--out", str(out),
                     "--trace", str(trace)]) == 0
        lines = trace.read_text().splitlines()
        assert lines[0] == "step,height,grad_norm,stratum_distance"
        assert len(lines) > 2

    def test_deterministic_bytes(self, tmp_path, solved_file):
        out2 = tmp_path / "again.json"
        assert main(["solve", "--genus", "2", "--out", str(out2)]) == 0
        assert out2.read_bytes() == solved_file.read_bytes()


class TestVerify:
    def test_solved_file_passes(self, solved_file, capsys):
        assert main(["verify", str(solved_file)]) == 0
        out = capsys.readouterr().out
        assert "deg g" in out and "3" in out
        assert "-12 pi" in out.replace("  ", " ")

    def test_missing_file(self):
        assert main(["verify", "/nonexistent/sol.json"]) == 1

    def test_tampered_file(self, solved_file, tmp_path):
        data = json.loads(solved_file.read_text())
        data["weierstrass"]["prevertices"][0] -= 1e-3
        data["weierstrass"]["prevertices"][-1] += 1e-3
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(data))
        assert main(["verify", str(bad)]) == 3


class TestMesh:
    def test_genus0_mesh(self, tmp_path):
        sol = tmp_path / "p0.json"
        assert main(["solve", "--genus", "0", "--out", str(sol)]) == 0
        obj = tmp_path / "p0.obj"
        assert main(["mesh", str(sol), "--radius", "2", "--resolution", "8",
                     "--out", str(obj)]) == 0
        text = obj.read_text().splitlines()
        vs = [l for l in text if l.startswith("v ")]
        fs = [l for l in text if l.startswith("f ")]
        syms = [l for l in text if l.startswith("# sym")]
        assert len(vs) > 0 and len(fs) > 0 and len(syms) == 3
        indices = {int(tok) for l in fs for tok in l.split()[1:]}
        assert min(indices) >= 1 and max(indices) <= len(vs)

    def test_genus1_mesh_metric_finite(self, tmp_path):
        sol = tmp_path / "p1.json"
        main(["solve", "--genus", "1", "--out", str(sol)])
        rec = zio.solution_to_record(zio.load_solution(sol))
        wd = zz.build_weierstrass(rec)
        mesh = zz.generate_mesh(wd, 2.0, 8)
        assert np.all(np.isfinite(mesh.conformal_factor))

    def test_bad_flags(self, solved_file):
        assert main(["mesh", str(solved_file), "--resolution", "2"]) == 1


class TestSweep:
    def test_extlength_csv(self, tmp_path):
        out = tmp_path / "ext.csv"
        assert main(["sweep", "--kind", "extlength",
                     "--lambdas", "1e-6,1e-3,8", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "lambda,ext,ext_times_log"
        prods = [float(l.split(",")[2]) for l in lines[1:]]
        mean = sum(prods) / len(prods)
        assert all(abs(p - mean) / mean < 0.15 for p in prods)

    def test_empty_grid_usage_error(self, tmp_path):
        assert main(["sweep", "--kind", "extlength",
                     "--lambdas", "1e-6,1e-3,0",
                     "--out", str(tmp_path / "x.csv")]) == 1

    def test_coalescence_sign_contrast(self, tmp_path):
        out = tmp_path / "coal.csv"
        assert main(["sweep", "--kind", "coalescence", "--genus", "3",
                     "--deltas", "1e-6,1e-4,9", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "delta,abs_a,abs_b,c1_ne,c1_sw"
        first = lines[1].split(",")
        c1_ne, c1_sw = float(first[3]), float(first[4])
        assert c1_ne * c1_sw < 0


class TestLadderFailureExit:
    def test_partial_ladder_written(self, tmp_path, monkeypatch):
        from zigzag import cli as zcli
        from zigzag.errors import LadderFailure

        partial = {1: zz.continuation_solve(1, 2)}

        def stalling(p, k, opts):
            raise LadderFailure("stalled", records=partial, failed_genus=2)

        monkeypatch.setattr(zcli, "continuation_solve", stalling)
        out = tmp_path / "p2.json"
        assert main(["solve", "--genus", "2", "--out", str(out)]) == 2
        assert (tmp_path / "p2.json.partial").exists()


class TestThreadEnv:
    def test_mesh_worker_count_respects_env(self, monkeypatch):
        from zigzag.weierstrass import _worker_count

        monkeypatch.setenv("ZIGZAG_THREADS", "2")
        assert _worker_count() == 2
        monkeypatch.setenv("ZIGZAG_THREADS", "0")
        assert _worker_count() == 1
        monkeypatch.setenv("ZIGZAG_THREADS", "junk")
        assert _worker_count() == 1

    def test_threaded_mesh_matches_serial(self, monkeypatch):
        rec = zz.continuation_solve(0, 2)
        wd = zz.build_weierstrass(rec)
        serial = zz.generate_mesh(wd, 2.0, 8)
        monkeypatch.setenv("ZIGZAG_THREADS", "4")
        threaded = zz.generate_mesh(wd, 2.0, 8)
        assert np.allclose(serial.vertices, threaded.vertices, atol=0.0)


class TestSolutionFileRoundTrip:
    def test_lossless(self, solved_file):
        sf = zio.load_solution(solved_file)
        rec = zio.solution_to_record(sf)
        text1 = zio.record_to_solution(
            rec, zio.weierstrass_from_solution(sf)
        ).dumps()
        path2 = solved_file.parent / "rewrite.json"
        path2.write_text(text1)
        sf2 = zio.load_solution(path2)
        rec2 = zio.solution_to_record(sf2)
        assert rec2.zigzag == rec.zigzag
        assert rec2.prev_ne.values == rec.prev_ne.values
        assert rec2.height == rec.height

    def test_reverify_height(self, solved_file):
        sf = zio.load_solution(solved_file)
        rec = zio.solution_to_record(sf)
        fresh = zz.height(rec.zigzag)
        assert abs(fresh - rec.height) < 1e-9
