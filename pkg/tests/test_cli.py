"""CLI contract tests (run in-process via main)."""

import numpy as np
import pytest

from linemend import Image, Mask, load_pnm, mask_to_pgm, save_pnm
from linemend.cli import main

from conftest import natural_image


@pytest.fixture()
def small_image(tmp_path):
    img = natural_image(64, 64, seed=3)
    path = tmp_path / "img.pgm"
    save_pnm(img, path)
    return path


def _write_mask(path, degraded):
    mask_to_pgm(Mask(degraded), path)


def test_inpaint_round_trip(tmp_path, small_image, capsys):
    mask_path = tmp_path / "mask.pgm"
    degraded = np.zeros((64, 64), bool)
    degraded[30, :] = True
    _write_mask(mask_path, degraded)
    out_path = tmp_path / "out.pgm"
    rc = main(["inpaint", "--input", str(small_image), "--mask", str(mask_path), "--output", str(out_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "passes=" in out and "filled_predictor=" in out
    restored = load_pnm(out_path)
    assert (restored.width, restored.height) == (64, 64)


def test_inpaint_empty_mask_byte_identical(tmp_path, small_image, capsys):
    mask_path = tmp_path / "mask.pgm"
    _write_mask(mask_path, np.zeros((64, 64), bool))
    out_path = tmp_path / "out.pgm"
    assert main(["inpaint", "--input", str(small_image), "--mask", str(mask_path), "--output", str(out_path)]) == 0
    assert out_path.read_bytes() == small_image.read_bytes()


def test_inpaint_dimension_mismatch_names_both_sizes(tmp_path, small_image, capsys):
    mask_path = tmp_path / "mask.pgm"
    _write_mask(mask_path, np.zeros((32, 16), bool))
    rc = main(["inpaint", "--input", str(small_image), "--mask", str(mask_path), "--output", str(tmp_path / "o.pgm")])
    assert rc != 0
    err = capsys.readouterr().err
    assert "64x64" in err and "16x32" in err


def test_inpaint_missing_file(tmp_path, capsys):
    rc = main(["inpaint", "--input", str(tmp_path / "none.pgm"), "--mask", str(tmp_path / "m.pgm"), "--output", str(tmp_path / "o.pgm")])
    assert rc != 0
    assert "error:" in capsys.readouterr().err


def test_degrade_zero_lines(tmp_path, small_image, capsys):
    mask_out = tmp_path / "m.pgm"
    img_out = tmp_path / "d.pgm"
    rc = main(["degrade", "--input", str(small_image), "--lines", "0", "--mask", str(mask_out), "--output", str(img_out)])
    assert rc == 0
    assert "degraded_pixels=0" in capsys.readouterr().out
    assert img_out.read_bytes() == small_image.read_bytes()
    assert load_pnm(mask_out).data.max() == 0.0


def test_degrade_deterministic(tmp_path, small_image, capsys):
    outs = []
    for run in range(2):
        mask_out = tmp_path / f"m{run}.pgm"
        img_out = tmp_path / f"d{run}.pgm"
        rc = main([
            "degrade", "--input", str(small_image), "--lines", "3", "--width", "2",
            "--seed", "41", "--mask", str(mask_out), "--output", str(img_out),
        ])
        assert rc == 0
        outs.append((mask_out.read_bytes(), img_out.read_bytes()))
    assert outs[0] == outs[1]


def test_degrade_count_bound_512(tmp_path, natural512_pgm, capsys):
    rc = main([
        "degrade", "--input", str(natural512_pgm), "--lines", "2", "--width", "1",
        "--seed", "6", "--mask", str(tmp_path / "m.pgm"), "--output", str(tmp_path / "d.pgm"),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    count = int(out.split("degraded_pixels=")[1].split()[0])
    assert 512 <= count <= 2 * (512 + 1)


def test_eval_identical(tmp_path, small_image, capsys):
    rc = main(["eval", "--reference", str(small_image), "--test", str(small_image)])
    assert rc == 0
    assert capsys.readouterr().out == "psnr_db=inf\nssim=1.0000\n"


def test_eval_off_by_one(tmp_path, capsys):
    a = tmp_path / "a.pgm"
    b = tmp_path / "b.pgm"
    save_pnm(Image(np.full((16, 16), 100.0)), a)
    save_pnm(Image(np.full((16, 16), 101.0)), b)
    rc = main(["eval", "--reference", str(a), "--test", str(b)])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "psnr_db=48.1308"
    assert lines[1].startswith("ssim=")


def test_eval_mismatched_sizes(tmp_path, small_image, capsys):
    other = tmp_path / "other.pgm"
    save_pnm(Image(np.zeros((8, 8))), other)
    rc = main(["eval", "--reference", str(small_image), "--test", str(other)])
    assert rc != 0


def test_sweep_row_count_and_determinism(tmp_path, small_image, capsys):
    csvs = []
    for run in range(2):
        csv_path = tmp_path / f"s{run}.csv"
        rc = main([
            "sweep", "--input", str(small_image), "--mode", "width",
            "--min", "1", "--max", "2", "--seeds", "1", "--csv", str(csv_path),
        ])
        assert rc == 0
        csvs.append(csv_path.read_bytes())
    assert csvs[0] == csvs[1]
    text = csvs[0].decode("ascii")
    lines = text.splitlines()
    assert lines[0] == "param_name,param_value,seed,psnr_db,ssim"
    assert len(lines) == 3  # header + 2 data rows
    assert lines[1].startswith("width,1,0,")
    assert lines[2].startswith("width,2,0,")
    out = capsys.readouterr().out
    assert "width=1 mean_psnr_db=" in out


def test_sweep_lines_mode(tmp_path, small_image, capsys):
    csv_path = tmp_path / "lines.csv"
    rc = main([
        "sweep", "--input", str(small_image), "--mode", "lines",
        "--min", "1", "--max", "3", "--seeds", "2", "--csv", str(csv_path),
    ])
    assert rc == 0
    rows = csv_path.read_text().splitlines()[1:]
    assert len(rows) == 6
    # ordered by (param_value, seed)
    keys = [tuple(int(x) for x in row.split(",")[1:3]) for row in rows]
    assert keys == sorted(keys)
