import hashlib
import subprocess
import sys
from pathlib import Path


from wetmeta.cli import RunConfig, cmd_fit, cmd_loocv, main
from wetmeta.records import COLUMNS, SITE_COLUMNS, bundled_path

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_screen_to_stdout(capsys):
    code, out, _ = run(capsys, "screen")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["ingested", "0", "255", "48"]
    assert lines[-1].split()[2] == "70"


def test_crosstab_matches_golden_bytes(tmp_path):
    assert main(["crosstab", "--suppress-empty", "--out", str(tmp_path)]) == 0
    produced = (tmp_path / "crosstab_service_wetland_type.txt").read_bytes()
    assert produced == (GOLDEN / "service_by_wetland_type.txt").read_bytes()


def test_empty_dataset_gives_zero_counts(tmp_path, capsys):
    data = tmp_path / "empty.csv"
    data.write_text(",".join(COLUMNS) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "screen", "--data", str(data), "--format", "csv")
    assert code == 0
    assert all(line.split(",")[2] == "0" for line in out.splitlines()[1:])
    code, out, _ = run(capsys, "crosstab", "--data", str(data))
    assert code == 0 and out.splitlines()[-1].split()[-1] == "0"


def test_malformed_input_exit_code(tmp_path, capsys):
    data = tmp_path / "bad.csv"
    data.write_text("record_id\nR1\n", encoding="utf-8")
    code, out, err = run(capsys, "screen", "--data", str(data))
    assert code == 2
    assert out == ""
    assert err.startswith("wetmeta: records: MalformedRow:")
    assert len(err.splitlines()) == 1


def test_missing_file_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "screen", "--data", str(tmp_path / "nope.csv"))
    assert code == 4
    assert err.startswith("wetmeta: io:")


def test_rank_deficient_schema_exit_code(tmp_path, capsys):
    # two nominal terms on the same field make the dummies collinear
    schema = tmp_path / "dup.ini"
    schema.write_text(
        "[a]\nkind = nominal\nfield = wetland_type\nlevels = Floodplains\n"
        "reference = PeatWetlands, SwampsMarshes, Unspecified\n"
        "[b]\nkind = nominal\nfield = wetland_type\nlevels = Floodplains\n"
        "reference = PeatWetlands, SwampsMarshes, Unspecified\n", encoding="utf-8")
    code, _, err = run(capsys, "fit", "--schema", str(schema))
    assert code == 3
    assert "RankDeficient" in err and "wetland_type:Floodplains" in err


def test_fit_then_predict(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["fit", "--out", str(out)]) == 0
    assert (out / "model.json").exists() and (out / "regression.txt").exists()
    sites = tmp_path / "sites.csv"
    sites.write_text(",".join(SITE_COLUMNS) + "\n"
                     "S1,X,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,100,900,50,0,0,0,0,\n",
                     encoding="utf-8")
    code, text, _ = run(capsys, "predict", "--model", str(out / "model.json"), "--sites", str(sites),
                        "--format", "csv")
    assert code == 0
    header, row = text.splitlines()
    assert row.startswith("S1,") and ",HalfVarianceCorrected," in row


def test_loocv_output(capsys):
    code, out, _ = run(capsys, "loocv", "--format", "csv", "--mode", "naive")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "record_id,function_error,unit_error"
    assert "#mode,NaiveExp" in lines
    assert "#folds,70" in lines


def test_bundled_inputs_not_mutated(tmp_path):
    paths = [bundled_path("teeb_inland_wetlands.csv"), bundled_path("normalization_tables.csv")]
    before = [hashlib.sha256(p.read_bytes()).hexdigest() for p in paths]
    cmd_fit(RunConfig(output_dir=tmp_path))
    cmd_loocv(RunConfig(output_dir=tmp_path))
    assert [hashlib.sha256(p.read_bytes()).hexdigest() for p in paths] == before


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wetmeta.cli", "screen", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("remove_tev_various,")
