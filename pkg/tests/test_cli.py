import json

import pytest

from hyperbolic_toolkit import EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE, main, rate_list


class TestGenGraph:
    def test_closure_file(self, tmp_path):
        out = tmp_path / "tree5.tsv"
        assert main(["gen-graph", "--depth", "5", "--mode", "closure", "--out", str(out)]) == EXIT_OK
        assert len(out.read_text().splitlines()) == 258

    def test_undirected_file(self, tmp_path):
        out = tmp_path / "nested" / "tree1.tsv"
        assert main(["gen-graph", "--depth", "1", "--mode", "undirected", "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "# directed: false"
        assert len(lines) == 3

    def test_missing_out(self):
        assert main(["gen-graph", "--depth", "2"]) == EXIT_USAGE

    @pytest.mark.parametrize("depth", ["0", "21", "deep"])
    def test_bad_depth(self, tmp_path, depth):
        assert main(["gen-graph", "--depth", depth, "--out", str(tmp_path / "t.tsv")]) == EXIT_USAGE


class TestUsage:
    def test_no_command(self):
        assert main([]) == EXIT_USAGE

    def test_unknown_command(self):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_rate_list(self):
        assert rate_list("0.1, 0.2") == [0.1, 0.2]


class TestBarycenter:
    def test_writes_every_cell(self, tmp_path):
        outdir = tmp_path / "bary"
        code = main(["barycenter", "--rates", "0.1,0.2", "--iters", "50", "--seed", "1", "--outdir", str(outdir)])
        assert code == EXIT_OK
        for rule in ("euclidean", "natural", "geodesic"):
            for lr in ("0.1", "0.2"):
                assert (outdir / f"{rule}_lr{lr}_trace.csv").exists()
                offsets = (outdir / f"{rule}_lr{lr}_offsets.csv").read_text().splitlines()
                assert offsets[0] == "bin,left,right,count"
        geo = (outdir / "geodesic_lr0.1_trace.csv").read_text().splitlines()
        assert geo[0] == "iteration,loss,log10_loss,x1,x2"
        assert len(geo) == 1 + 51
        summary = json.loads((outdir / "summary.json").read_text())
        assert summary["bias.lr0.2.geo_balanced"] is True
        assert summary["bias.lr0.2.natural_outward"] is True
        assert summary["bias.lr0.2.right_clipped"] is True
        assert summary["bias.lr0.2.closed_form_right_error"] is None
        assert summary["geodesic_lr0.2.failed"] is False

    def test_same_seed_same_bytes(self, tmp_path):
        args = ["barycenter", "--rates", "0.05", "--iters", "40", "--seed", "4", "--outdir"]
        assert main([*args, str(tmp_path / "a")]) == EXIT_OK
        assert main([*args, str(tmp_path / "b"), "--workers", "1"]) == EXIT_OK
        for name in ("geodesic_lr0.05_trace.csv", "natural_lr0.05_offsets.csv", "summary.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    @pytest.mark.parametrize("rates", ["0.1,-0.2", "fast", ""])
    def test_bad_rates(self, tmp_path, rates):
        assert main(["barycenter", "--rates", rates, "--outdir", str(tmp_path)]) == EXIT_USAGE

    def test_bad_eps(self, tmp_path):
        assert main(["barycenter", "--eps", "1.5", "--outdir", str(tmp_path)]) == EXIT_USAGE


class TestEmbedAndEval:
    def test_round_trip(self, tmp_path):
        graph = tmp_path / "tree2.tsv"
        assert main(["gen-graph", "--depth", "2", "--out", str(graph)]) == EXIT_OK
        out = tmp_path / "embed"
        assert main(["embed", "--graph", str(graph), "--steps", "50", "--eval-every", "25", "--out", str(out)]) == EXIT_OK

        report = json.loads((out / "eval.json").read_text())
        assert -1.0 <= report["tau"] <= 1.0
        assert report["steps_taken"] == 50
        assert report["rule"] == "geodesic"
        assert len((out / "embedding.tsv").read_text().splitlines()) == 7
        assert (out / "trace.csv").read_text().splitlines()[0] == "step,surrogate_loss,full_loss"

        evaluated = tmp_path / "eval.json"
        code = main(["eval", "--graph", str(graph), "--embedding", str(out / "embedding.tsv"), "--out", str(evaluated)])
        assert code == EXIT_OK
        again = json.loads(evaluated.read_text())
        assert again["tau"] == pytest.approx(report["tau"], abs=1e-12)
        assert again["full_loss"] == pytest.approx(report["full_loss"], rel=1e-12)

    def test_closure_with_base(self, tmp_path):
        closure = tmp_path / "closure.tsv"
        base = tmp_path / "base.tsv"
        main(["gen-graph", "--depth", "2", "--mode", "closure", "--out", str(closure)])
        main(["gen-graph", "--depth", "2", "--mode", "undirected", "--out", str(base)])
        out = tmp_path / "embed"
        code = main(["embed", "--graph", str(closure), "--base", str(base), "--steps", "20",
                     "--negatives", "3", "--rule", "natural", "--out", str(out)])
        assert code == EXIT_OK
        assert "tau_base" in json.loads((out / "eval.json").read_text())

    def test_missing_graph(self, tmp_path):
        code = main(["embed", "--graph", str(tmp_path / "absent.tsv"), "--out", str(tmp_path / "o")])
        assert code == EXIT_IO

    def test_malformed_graph(self, tmp_path):
        graph = tmp_path / "bad.tsv"
        graph.write_text("a\tb\nc\n")
        assert main(["embed", "--graph", str(graph), "--out", str(tmp_path / "o")]) == EXIT_IO

    def test_invalid_learning_rate(self, tmp_path):
        graph = tmp_path / "tree1.tsv"
        main(["gen-graph", "--depth", "1", "--out", str(graph)])
        assert main(["embed", "--graph", str(graph), "--lr", "-1", "--out", str(tmp_path / "o")]) == EXIT_USAGE

    def test_eval_with_incomplete_embedding(self, tmp_path):
        graph = tmp_path / "tree1.tsv"
        main(["gen-graph", "--depth", "1", "--out", str(graph)])
        embedding = tmp_path / "emb.tsv"
        embedding.write_text("n0\t0.1\t0.0\nn1\t0.0\t0.2\n")
        code = main(["eval", "--graph", str(graph), "--embedding", str(embedding), "--out", str(tmp_path / "e.json")])
        assert code == EXIT_IO

    def test_eval_of_coincident_embedding(self, tmp_path):
        graph = tmp_path / "tree1.tsv"
        main(["gen-graph", "--depth", "1", "--out", str(graph)])
        embedding = tmp_path / "emb.tsv"
        embedding.write_text("n0\t0.0\t0.0\nn1\t0.0\t0.0\nn2\t0.0\t0.0\n")
        code = main(["eval", "--graph", str(graph), "--embedding", str(embedding), "--out", str(tmp_path / "e.json")])
        assert code == EXIT_FAILED
        assert not (tmp_path / "e.json").exists()


class TestSelfTest:
    def test_zero_samples(self):
        assert main(["expmap-selftest", "--samples", "0"]) == EXIT_USAGE

    def test_passes(self, tmp_path, capsys):
        out = tmp_path / "selftest.json"
        assert main(["expmap-selftest", "--samples", "2000", "--seed", "0", "--out", str(out)]) == EXIT_OK
        printed = capsys.readouterr().out.splitlines()
        assert printed and all(line.startswith("PASS") for line in printed)
        assert json.loads(out.read_text())["ok"] is True

    def test_failure_code_is_distinct(self):
        assert EXIT_FAILED not in (EXIT_OK, EXIT_USAGE, EXIT_IO)
