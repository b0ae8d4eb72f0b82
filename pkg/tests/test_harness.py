import numpy as np
import pytest

from topkstab import ingest, oracle_topk, Query
from topkstab.harness import io
from topkstab.harness.bench import sample
from topkstab.harness.cli import main
from topkstab.harness.gen import DistError, gen_dataset, gen_queries
from topkstab.harness.verify import run_verify

from _util import D1_RECORDS


@pytest.fixture
def d1_csv(tmp_path):
    path = tmp_path / "d1.csv"
    ids, l, r, w = zip(*D1_RECORDS)
    io.write_dataset(path, ids, l, r, w)
    return path


@pytest.fixture
def d1_workload(tmp_path, d1_csv):
    path = tmp_path / "d1_q.csv"
    assert main(["queries", str(d1_csv), "--count", "200", "--k", "3", "--seed", "4", "--out", str(path)]) == 0
    return path


class TestGen:
    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert main(["gen", "--n", "4", "--seed", "9", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().splitlines()[0] == "id,l,r,w"

    def test_other_seed_differs(self):
        assert not np.array_equal(gen_dataset(50, 100.0, seed=1)[1], gen_dataset(50, 100.0, seed=2)[1])

    def test_gaussian_mean(self):
        _, _, _, w = gen_dataset(100_000, 1e6, weight="gaussian:5000,1500", seed=3)
        assert abs(w.mean() - 5000) < 50

    def test_degenerate_lengths(self):
        _, l, r, _ = gen_dataset(500, 1e3, length="uniform:0,0", seed=1)
        assert np.array_equal(l, r)

    def test_endpoints_in_domain(self):
        _, l, r, _ = gen_dataset(2000, 50.0, length="pareto:1.2,3", seed=2, resolution=0.5)
        assert (l >= 0).all() and (r <= 50).all() and (l <= r).all()
        assert np.allclose(l * 2, np.round(l * 2))

    @pytest.mark.parametrize("length,weight", [
        ("cauchy:1,2", "gaussian:1,1"),
        ("uniform:5,1", "gaussian:1,1"),
        ("uniform:1", "gaussian:1,1"),
        ("pareto:0,1", "gaussian:1,1"),
        ("uniform:0,1", "gaussian:1,-2"),
        ("uniform:0,1", "int:1.5,3"),
        ("uniform:0,1", "uniform:a,b"),
    ])
    def test_bad_specs(self, length, weight):
        with pytest.raises(DistError):
            gen_dataset(10, 100.0, length, weight)

    def test_bad_spec_is_usage_error(self, tmp_path, capsys):
        assert main(["gen", "--n", "4", "--length", "nope:1,2", "--out", str(tmp_path / "x.csv")]) == 2
        assert "unknown distribution" in capsys.readouterr().err

    def test_n_zero_rejected(self):
        with pytest.raises(DistError):
            gen_dataset(0, 10.0)


class TestQueries:
    def test_d1_default_shape(self, tmp_path, d1_csv):
        out = tmp_path / "q.csv"
        assert main(["queries", str(d1_csv), "--count", "1000", "--k", "25", "--out", str(out)]) == 0
        qs = io.read_workload(out)
        assert len(qs) == 1000
        assert all(1 <= q.s <= 9 and q.k == 25 for q in qs)

    def test_count_zero(self, tmp_path, d1_csv):
        out = tmp_path / "q.csv"
        assert main(["queries", str(d1_csv), "--count", "0", "--out", str(out)]) == 0
        assert out.read_text() == "s,k\n"

    def test_deterministic(self, d1):
        assert gen_queries(d1, 50, 5, seed=7) == gen_queries(d1, 50, 5, seed=7)

    def test_empty_dataset(self):
        with pytest.raises(DistError):
            gen_queries(ingest([]), 5, 1)


class TestVerify:
    def test_d1_ok(self, d1_csv, d1_workload, capsys):
        assert main(["verify", str(d1_csv), str(d1_workload)]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[-1] == "OK"
        for name in ("ss", "it", "if", "st", "sst", "stpsa"):
            assert f"{name},0" in out

    def test_corrupted_row(self, tmp_path, d1_workload, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,l,r,w\n2,3,7,20\n1,5,1,10\n")
        assert main(["verify", str(bad), str(d1_workload)]) == 2
        err = capsys.readouterr().err
        assert "bad.csv:3" in err and "l > r at id 1" in err

    @pytest.mark.parametrize("text,needle", [
        ("id,l,r\n1,2,3\n", ":1: expected header"),
        ("id,l,r,w\n1,2,x,4\n", ":2: cannot parse"),
        ("id,l,r,w\n1,2,3\n", ":2: expected 4 fields"),
        ("id,l,r,w\n1,2,3,4\n1,2,3,4\n", ":3: duplicate id 1"),
    ])
    def test_parse_errors_name_line(self, tmp_path, d1_workload, capsys, text, needle):
        bad = tmp_path / "bad.csv"
        bad.write_text(text)
        assert main(["verify", str(bad), str(d1_workload)]) == 2
        assert needle in capsys.readouterr().err

    def test_missing_file(self, tmp_path, d1_workload):
        assert main(["verify", str(tmp_path / "none.csv"), str(d1_workload)]) == 2

    def test_injected_fault(self, d1):
        qs = [Query(4.0, 2), Query(6.0, 3)]
        report = run_verify(d1, qs, _drop_id=2)
        assert not report.ok
        assert all(c == 2 for c in report.mismatches.values())
        text = report.render()
        assert "FAIL algo=ss query=0" in text and "expected=[2, 4] got=[4, 1]" in text
        assert text.endswith("FAILED\n")

    def test_report_file(self, tmp_path, d1_csv, d1_workload, capsys):
        rep = tmp_path / "rep.txt"
        assert main(["verify", str(d1_csv), str(d1_workload), "--report", str(rep)]) == 0
        assert rep.read_text() == capsys.readouterr().out

    def test_randomized_pairs(self):
        rng = np.random.default_rng(77)
        for trial in range(40):
            n = int(rng.integers(1, 2001))
            length = "pareto:1.5,2" if trial % 2 else "uniform:0,80"
            ids, l, r, w = gen_dataset(n, 1000.0, length, "int:1,6", seed=trial, resolution=1.0 if trial % 3 else 0.0)
            ds = ingest(zip(ids.tolist(), l.tolist(), r.tolist(), w.tolist()))
            qs = gen_queries(ds, 20, int(rng.integers(1, 40)), seed=trial)
            assert run_verify(ds, qs).ok


class TestBench:
    def test_sample_full_is_identity(self, d1):
        assert sample(d1, 1.0, 0) is d1

    def test_sample_rate_and_determinism(self):
        ids, l, r, w = gen_dataset(20_000, 1000.0, seed=1)
        ds = ingest(zip(ids.tolist(), l.tolist(), r.tolist(), w.tolist()))
        a, b = sample(ds, 0.25, 3), sample(ds, 0.25, 3)
        assert np.array_equal(a.ids, b.ids)
        assert 4500 < len(a) < 5500

    @pytest.mark.parametrize("rate", [0.0, 1.5, -1])
    def test_bad_rate(self, d1, rate):
        with pytest.raises(ValueError):
            sample(d1, rate, 0)

    def test_report(self, tmp_path, d1_csv, d1_workload):
        out = tmp_path / "rep.csv"
        assert main(["bench", str(d1_csv), str(d1_workload), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(io.REPORT_HEADER)
        assert [x.split(",")[0] for x in lines[1:]] == ["ss", "it", "if", "st", "sst", "stpsa"]
        assert all(x.split(",")[1] == "4" for x in lines[1:])

    def test_empty_sample_is_usage_error(self, d1_csv, d1_workload, capsys):
        assert main(["bench", str(d1_csv), str(d1_workload), "--sample-rate", "0.0001", "--seed", "1"]) == 2
        assert "empty" in capsys.readouterr().err

    def test_unknown_algo(self, d1_csv, d1_workload):
        assert main(["bench", str(d1_csv), str(d1_workload), "--algos", "it,bogus"]) == 2


class TestQueryCli:
    def test_stpsa(self, d1_csv, capsys):
        assert main(["query", str(d1_csv), "--algo", "stpsa", "--s", "4", "--k", "2"]) == 0
        assert capsys.readouterr().out == "2,3.0,7.0,20.0\n4,2.0,8.0,15.0\n"

    def test_nothing(self, d1_csv, capsys):
        assert main(["query", str(d1_csv), "--algo", "ss", "--s", "100", "--k", "1"]) == 0
        assert capsys.readouterr().out == ""

    def test_min_order(self, d1_csv, capsys):
        assert main(["query", str(d1_csv), "--algo", "if", "--s", "4", "--k", "2", "--order", "min"]) == 0
        assert capsys.readouterr().out == "1,1.0,5.0,10.0\n4,2.0,8.0,15.0\n"

    def test_unknown_algo(self, d1_csv, capsys):
        assert main(["query", str(d1_csv), "--algo", "bst", "--s", "4", "--k", "2"]) == 2
        assert "stpsa" in capsys.readouterr().err

    def test_matches_oracle(self, d1_csv, d1, capsys):
        for algo in ("ss", "it", "if", "st", "sst", "stpsa"):
            main(["query", str(d1_csv), "--algo", algo, "--s", "7", "--k", "3"])
            got = [int(line.split(",")[0]) for line in capsys.readouterr().out.splitlines()]
            assert got == [x.id for x in oracle_topk(d1, Query(7, 3))]


class TestTiming:
    def test_interleaved_means(self, d1):
        from topkstab.harness.algorithms import ALGORITHMS
        from topkstab.harness.bench import interleaved_means

        qs = [Query(float(s), 2) for s in range(1, 10)]
        means = interleaved_means({a: (ALGORITHMS[a](d1)[1], qs) for a in ("it", "stpsa")}, repeat=2)
        assert set(means) == {"it", "stpsa"} and all(v > 0 for v in means.values())

    def test_bench_repeat(self, tmp_path, d1_csv, d1_workload):
        out = tmp_path / "rep.csv"
        assert main(["bench", str(d1_csv), str(d1_workload), "--algos", "stpsa", "--repeat", "3",
                     "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 2
        assert main(["bench", str(d1_csv), str(d1_workload), "--repeat", "0"]) == 2
