import json

import pytest

from omalous.catalog import ENV_VAR, CatalogRanges, build_catalog, catalog_json
from omalous.cli import main
from omalous.errors import OmalousError
from omalous.monad import cohomology_data, monad_from_json, monad_to_json, quintic_monad
from omalous.search import is_omalous


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def walk(value):
    if isinstance(value, dict):
        for v in value.values():
            yield from walk(v)
    elif isinstance(value, list):
        for v in value:
            yield from walk(v)
    else:
        yield value


def test_tangent(capsys):
    code, doc, _ = run(capsys, "tangent", "--hypersurface", "5")
    assert code == 0 and doc["c1"] == "0" and doc["c2"] == "10*H^2" and doc["canonical"] == "0"
    _, doc, _ = run(capsys, "tangent", "--blowup", "4")
    assert doc["c2"] == "7*pt"
    _, doc, _ = run(capsys, "tangent", "--product", "1", "1")
    assert doc["c1"] == "2*h1 + 2*h2"
    _, doc, _ = run(capsys, "tangent", "--cicy", "7", "2", "2", "2", "2")
    assert doc["c2"] == "4*H^2"


@pytest.mark.parametrize(
    "argv",
    [
        ["tangent"],
        ["tangent", "--hypersurface", "x"],
        ["tangent", "--cicy", "5", "3", "2"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code = main(argv)
    _, err = capsys.readouterr()
    assert code == 2 and err


def test_check(capsys, tmp_path):
    good = tmp_path / "quintic.json"
    good.write_text(json.dumps(monad_to_json(quintic_monad())))
    code, doc, _ = run(capsys, "check", "--monad", str(good))
    assert code == 0 and doc["omalous"] is True and doc["defect"] == "0"

    perturbed = monad_to_json(quintic_monad())
    perturbed["m2"][0]["mult"] = 11
    bad = tmp_path / "perturbed.json"
    bad.write_text(json.dumps(perturbed))
    code, doc, _ = run(capsys, "check", "--monad", str(bad))
    assert code == 1 and doc["omalous"] is False and doc["defect"] != "0"

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "check", "--monad", str(broken))
    assert code == 2 and err
    code, _, _ = run(capsys, "check", "--monad", str(tmp_path / "missing.json"))
    assert code == 2


def test_search(capsys):
    code, rows, _ = run(capsys, "search", "hypersurface", "--d-max", "5")
    assert code == 0
    assert [(r["d"], r["l"], r["c"], r["stability"]) for r in rows] == [
        (3, 2, 1, "stable"),
        (4, 1, 5, "stable"),
        (5, 0, 10, "semi-stable"),
    ]
    _, rows, _ = run(capsys, "search", "hypersurface", "--d-max", "2")
    assert rows == []
    code, rows, _ = run(capsys, "search", "product", "--n", "2", "--m", "2", "--bound", "8")
    assert code == 0 and {(r["b"], r["c"]) for r in rows} == {(3, 3)}
    code, _, err = run(capsys, "search", "product", "--n", "2", "--m", "2", "--bound", "3")
    assert code == 2 and "bound" in err


def test_rr(capsys):
    code, doc, _ = run(capsys, "rr", "--n", "3", "--r", "4")
    assert code == 0 and (doc["K"], doc["L"], doc["W"]) == ([3, 3, 3, 3], [3, 2, 2, 2], 25)
    code, doc, _ = run(capsys, "rr", "--n", "2", "--sheaf", "1", "0", "0")
    assert code == 0 and doc["chi"] == 1 and doc["todd_chi"] == 1 and "h1" not in doc
    code, doc, _ = run(
        capsys, "rr", "--n", "4", "--sheaf", "6", "3", "7",
        "--a-vec", "-1", "-1", "-1", "-1", "--twist", "-1",
    )
    assert doc["chi"] == -5 and doc["h1"] == 5 and "vanishing" in doc["note"]
    code, _, err = run(capsys, "rr", "--n", "2", "--r", "4")
    assert code == 2 and "requires n >= 3" in err
    code, _, _ = run(capsys, "rr", "--n", "3", "--sheaf", "1", "0", "0", "--a-vec", "1")
    assert code == 2


def test_slope(capsys, tmp_path):
    code, doc, _ = run(capsys, "slope", "--product", "2", "3")
    assert code == 0 and doc["degree"] == 36 and doc["slope"] == "36/5"
    code, doc, _ = run(capsys, "slope", "--product", "1", "1", "--pol", "h1 + 2*h2")
    assert doc["degree"] == 6
    path = tmp_path / "q.json"
    path.write_text(json.dumps(monad_to_json(quintic_monad())))
    _, doc, _ = run(capsys, "slope", "--monad", str(path))
    assert doc["slope"] == 0
    code, _, err = run(capsys, "slope", "--blowup", "3", "--pol", "H - E1")
    assert code == 2 and "ample" in err


def test_catalog_contents_and_determinism(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["catalog", "--out", str(a)]) == 0
    assert main(["catalog", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.endswith("\n")
    doc = json.loads(text)
    assert doc["schema"] == "1"
    entries = doc["entries"]
    ids = [e["id"] for e in entries]
    assert len(ids) == len(set(ids)) == 35
    assert sum(i.startswith("cicy-") for i in ids) == 5
    assert sum(i.startswith("linear-") for i in ids) == 8
    blow = next(e for e in entries if e["id"] == "blowup-n3-r4")
    assert blow["dimensions"]["W"] == 25
    assert not any(isinstance(v, float) for v in walk(doc))
    assert all(e["report"]["omalous"] and e["provenance"] for e in entries)


def test_catalog_monads_round_trip(tmp_path):
    doc = json.loads(catalog_json())
    for entry in doc["entries"]:
        monad = monad_from_json(entry["monad"])
        report = is_omalous(cohomology_data(monad), monad.variety)
        assert report.to_json() == entry["report"]


def test_catalog_io_failure(capsys, tmp_path):
    code = main(["catalog", "--out", str(tmp_path / "no" / "such" / "dir.json")])
    _, err = capsys.readouterr()
    assert code == 3 and "cannot write" in err


def test_catalog_env_override_and_flags(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, "d_max=6, blowup_n=3:3, blowup_r=4, product_n=1:1, product_m=1:2")
    out = tmp_path / "small.json"
    assert main(["catalog", "--out", str(out)]) == 0
    ids = [e["id"] for e in json.loads(out.read_text())["entries"]]
    assert ids == [
        "quintic",
        "linear-d3", "linear-d4", "linear-d5", "linear-d6",
        "cicy-P4-5", "cicy-P5-3-3", "cicy-P5-4-2", "cicy-P6-2-2-3", "cicy-P7-2-2-2-2",
        "blowup-n3-r4",
        "product-n1-m1", "product-n1-m2",
    ]
    assert main(["catalog", "--out", str(out), "--d-max", "3", "--product-m", "1:1"]) == 0
    ids = [e["id"] for e in json.loads(out.read_text())["entries"]]
    assert "linear-d4" not in ids and "product-n1-m2" not in ids and "blowup-n3-r4" in ids


def test_catalog_range_grammar():
    assert CatalogRanges.parse("") == CatalogRanges()
    assert CatalogRanges.parse("blowup_r=5").blowup_r == (5, 5)
    for text in ["d_max", "colour=3", "d_max=x", "blowup_n=1:z"]:
        with pytest.raises(OmalousError):
            CatalogRanges.parse(text)
    assert CatalogRanges.from_env({}) == CatalogRanges()
    assert len(build_catalog(CatalogRanges.parse("d_max=3,blowup_n=3:3,blowup_r=4:4,product_n=1:1,product_m=1:1"))) == 9
