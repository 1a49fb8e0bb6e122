import pytest

from evolvesort_plots.schema import SchemaError, read_samples, read_summary

SAMPLES_HEADER = "run_id,algorithm,adversary,n,r,start,seed,t,tau,good_cum,bad_cum,rounds"
SUMMARY_HEADER = (
    "run_id,algorithm,adversary,n,r,start,seed,"
    "steady_mean_tau,ratio,convergence_time,good_over_bad"
)


def write(path, text):
    path.write_text(text)
    return path


def test_reads_rows_and_skips_comments(tmp_path):
    path = write(
        tmp_path / "s.csv",
        "# comment header\n"
        f"{SAMPLES_HEADER}\n"
        "a,insertion,uniform,100,1,sorted,0,0,0,0,0,0\n"
        "a,insertion,uniform,100,1,sorted,0,5,3,2,1,0\n",
    )
    rows = read_samples([path])
    assert len(rows) == 2
    assert rows[1].tau == 3


def test_missing_column_named(tmp_path):
    path = write(
        tmp_path / "s.csv",
        "run_id,algorithm,adversary,n,r,start,seed,t,good_cum,bad_cum,rounds\n"
        "a,insertion,uniform,100,1,sorted,0,0,0,0,0\n",
    )
    with pytest.raises(SchemaError, match="missing column 'tau'"):
        read_samples([path])


def test_empty_file_rejected(tmp_path):
    path = write(tmp_path / "s.csv", "")
    with pytest.raises(SchemaError, match="empty file"):
        read_samples([path])


def test_headers_without_rows_rejected(tmp_path):
    path = write(tmp_path / "s.csv", f"{SAMPLES_HEADER}\n")
    with pytest.raises(SchemaError, match="no data rows"):
        read_samples([path])


def test_non_numeric_field_rejected(tmp_path):
    path = write(
        tmp_path / "s.csv",
        f"{SAMPLES_HEADER}\n"
        "a,insertion,uniform,100,1,sorted,0,zero,0,0,0,0\n",
    )
    with pytest.raises(SchemaError, match="column 't'"):
        read_samples([path])


def test_missing_file_rejected(tmp_path):
    with pytest.raises(SchemaError, match="no such file"):
        read_samples([tmp_path / "absent.csv"])


def test_summary_nan_ratio_parsed(tmp_path):
    path = write(
        tmp_path / "m.csv",
        f"{SUMMARY_HEADER}\n"
        "a,insertion,uniform,100,0,sorted,0,12.5,0.125,40,nan\n",
    )
    rows = read_summary([path])
    assert rows[0].ratio == 0.125
    assert rows[0].good_over_bad != rows[0].good_over_bad  # NaN


def test_multiple_files_concatenate(tmp_path):
    a = write(
        tmp_path / "a.csv",
        f"{SAMPLES_HEADER}\na,bubble,uniform,10,1,sorted,0,0,0,0,0,0\n",
    )
    b = write(
        tmp_path / "b.csv",
        f"{SAMPLES_HEADER}\nb,insertion,uniform,10,1,sorted,0,0,0,0,0,0\n",
    )
    rows = read_samples([a, b])
    assert {r.algorithm for r in rows} == {"bubble", "insertion"}
