"""Document round-trips, the command surface, and its exit-code contract."""

import json
import os
import subprocess
import sys

import pytest

from homcert import docs
from homcert.cli import main
from homcert.exactlin import Matrix, Tensor3
from homcert.homcore import HomAlgebra
from homcert.hommod import HomModule
from homcert.functors import adjoint_bimodule
from homcert.search import sc_tensor

from conftest import catalog_algebra


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def write_algebra(path, a, **kw):
    docs.save_json(str(path), docs.algebra_to_doc(a, **kw))
    return str(path)


def test_algebra_doc_round_trip(dual_numbers, tmp_path):
    doc = docs.algebra_to_doc(dual_numbers)
    assert docs.algebra_from_doc(doc) == dual_numbers
    # parse -> serialize -> parse is the identity, and bytes are stable
    text = docs.dumps(doc)
    again = docs.dumps(docs.algebra_to_doc(docs.algebra_from_doc(json.loads(text))))
    assert text == again


def test_module_doc_round_trip_inline_and_reference(dual_numbers, tmp_path):
    m = adjoint_bimodule(dual_numbers)
    doc = docs.module_to_doc(m)
    assert docs.module_from_doc(doc) == m
    alg_path = tmp_path / "alg.json"
    write_algebra(alg_path, dual_numbers)
    ref_doc = docs.module_to_doc(m, algebra_ref="alg.json")
    assert docs.module_from_doc(ref_doc, str(tmp_path)) == m


def test_operator_doc_round_trip():
    m = Matrix([[0, "1/2"], [1, 0]])
    assert docs.operator_from_doc(docs.operator_to_doc(m)) == m


def test_document_type_sniffing(dual_numbers):
    assert docs.document_type(docs.algebra_to_doc(dual_numbers)) == "algebra"
    assert docs.document_type(docs.operator_to_doc(Matrix.zeros(1, 1))) == "operator"
    m = adjoint_bimodule(dual_numbers)
    assert docs.document_type(docs.module_to_doc(m)) == "module"
    with_delta = docs.algebra_to_doc(dual_numbers, delta=Tensor3.zeros(2))
    assert docs.document_type(with_delta) == "bialgebra"


def test_check_passing_document(workdir, affine_lie, capsys):
    path = write_algebra("lie.json", affine_lie)
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "hom-jacobi" in out


def test_check_failing_document_witness(workdir, capsys):
    t = sc_tensor(2, {(0, 0): {1: 1}, (0, 1): {0: 1}})
    bad = HomAlgebra(2, "hom-associative", {"mul": t}, Matrix.identity(2))
    path = write_algebra("bad.json", bad)
    assert main(["check", path]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "(1, 1, 1)" in out


def test_check_truncated_file(workdir):
    with open("broken.json", "w") as fh:
        fh.write('{"schema_version": "1", "kind": ')
    assert main(["check", "broken.json"]) == 2


def test_check_predicates(workdir, dual_numbers):
    path = write_algebra("dual.json", dual_numbers)
    assert main(["check", path, "--predicate", "multiplicative"]) == 0
    assert main(["check", path, "--predicate", "lie-admissible"]) == 0
    assert main(["check", path, "--predicate", "left-commutative"]) == 0
    assert main(["check", path, "--predicate", "no-such-predicate"]) == 2
    docs.save_json("r.json", docs.operator_to_doc(Matrix([[0, 0], [1, 0]])))
    assert main(["check", path, "r.json", "--predicate", "rota-baxter",
                 "--weight", "0"]) == 0
    assert main(["check", path, "r.json", "--predicate", "rota-baxter",
                 "--weight", "1"]) == 1


def test_check_module_document(workdir, dual_numbers):
    m = adjoint_bimodule(dual_numbers)
    docs.save_json("mod.json", docs.module_to_doc(m))
    assert main(["check", "mod.json"]) == 0


def test_check_bialgebra_convolution(workdir, dual_numbers):
    doc = docs.algebra_to_doc(dual_numbers, delta=Tensor3.zeros(2))
    docs.save_json("bialg.json", doc)
    assert main(["check", "bialg.json", "--predicate", "convolution-rb"]) == 0


def test_derive_commutator_and_cert_sibling(workdir, dual_numbers):
    path = write_algebra("dual.json", dual_numbers)
    assert main(["derive", "commutator-lie", path, "--out", "lie.json"]) == 0
    produced = docs.load_json("lie.json")
    assert produced["kind"] == "hom-lie"
    assert produced["provenance"]["functor"] == "commutator-lie"
    cert = docs.load_json("lie.json.cert.json")
    assert cert["passed"] is True


def test_derive_replay_is_bit_identical(workdir, dual_numbers):
    path = write_algebra("dual.json", dual_numbers)
    main(["derive", "commutator-lie", path, "--out", "a.json"])
    main(["derive", "commutator-lie", path, "--out", "b.json"])
    assert open("a.json", "rb").read() == open("b.json", "rb").read()


def test_derive_scale_zero_rejected(workdir):
    l = catalog_algebra("hom-postlie", "skew-pair-postlie")
    path = write_algebra("pl.json", l)
    assert main(["derive", "scale", path, "--k", "0", "--out", "o.json"]) == 2
    assert main(["derive", "scale", path, "--k", "1/2", "--out", "o.json"]) == 0


def test_derive_module_pipeline(workdir, dual_numbers):
    path = write_algebra("dual.json", dual_numbers)
    assert main(["derive", "adjoint-bimodule", path, "--out", "bim.json"]) == 0
    docs.save_json("r.json", docs.operator_to_doc(Matrix([[0, 0], [1, 0]])))
    assert main(["derive", "oop-assoc-to-dendriform", "bim.json", "r.json",
                 "--out", "dend.json"]) == 0
    assert docs.load_json("dend.json")["kind"] == "hom-dendriform"
    assert main(["derive", "bimodule-to-lie-module", "bim.json",
                 "--out", "liemod.json"]) == 0


def test_derive_postlie_module_pipeline(workdir):
    l = catalog_algebra("hom-postlie", "skew-pair-postlie")
    path = write_algebra("pl.json", l)
    assert main(["derive", "adjoint-postlie-module", path, "--k", "1",
                 "--out", "self.json"]) == 0
    assert main(["derive", "tensor-modules", "self.json", "self.json",
                 "--k", "1", "--out", "tens.json"]) == 0
    assert docs.load_json("tens.json")["mdim"] == 9
    assert main(["derive", "twist-n0", "self.json", "--n", "2",
                 "--out", "tw.json"]) == 0
    assert main(["derive", "twist-0k", "self.json", "--k", "1",
                 "--out", "tw2.json"]) == 0


def test_derive_precondition_failure_exit(workdir, dual_numbers):
    path = write_algebra("dual.json", dual_numbers)
    docs.save_json("bad.json", docs.operator_to_doc(Matrix.identity(2)))
    # identity is not a weight-0 Rota-Baxter operator here
    assert main(["derive", "rb-dendriform", path, "bad.json",
                 "--weight", "0", "--out", "x.json"]) == 1


def test_derive_ldend_pipeline(workdir):
    ld = catalog_algebra("hom-l-dendriform", "split-dual-ld")
    path = write_algebra("ld.json", ld)
    assert main(["derive", "ldend-to-prelie", path, "--mode", "vertical",
                 "--out", "v.json"]) == 0
    assert main(["derive", "ldend-brackets", path, "--out", "br.json"]) == 0
    assert main(["derive", "ldend-transpose", path, "--out", "t.json"]) == 0
    assert main(["derive", "prelie-module-split", path, "--out", "sp.json"]) == 0
    assert docs.load_json("sp.json")["kind"] == "prelie-bimodule"


def test_search_postlie_command(workdir, affine_lie):
    path = write_algebra("lie.json", affine_lie)
    assert main(["search-postlie", path, "--bound", "1", "--out", "found"]) == 0
    summary = docs.load_json("found/summary.json")
    assert summary["nullspace_dim"] == 4
    assert summary["candidates_tested"] == 81
    assert summary["survivors"] == 22
    files = sorted(os.listdir("found"))
    assert len(files) == 23  # survivors + summary
    # survivors certify standalone
    assert main(["check", "found/survivor_0000.json"]) == 0


def test_search_postlie_budget_exit(workdir):
    abelian3 = catalog_algebra("hom-lie", "abelian-3")
    path = write_algebra("ab3.json", abelian3)
    assert main(["search-postlie", path, "--bound", "1"]) == 3


def test_certify_corpus_deterministic(workdir, capsys):
    assert main(["certify-corpus", "--trials", "2", "--max-dim", "2",
                 "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["certify-corpus", "--trials", "2", "--max-dim", "2",
                 "--seed", "5"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "RESULT: PASS" in first


def test_certify_corpus_zero_trials_vacuous(workdir, capsys):
    assert main(["certify-corpus", "--trials", "0", "--max-dim", "2",
                 "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "RESULT: PASS" in out


def test_no_color_respected(workdir, affine_lie, monkeypatch):
    path = write_algebra("lie.json", affine_lie)
    monkeypatch.setenv("NO_COLOR", "1")
    result = subprocess.run(
        [sys.executable, "-m", "homcert.cli", "check", path],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert "\x1b[" not in result.stdout
