import json

import numpy as np
import pytest

from mdfusion.imagecore import SamplingMask
from mdfusion.imageio import (DimensionOverflowError, MalformedHeaderError, TruncatedDataError,
                              load_image, load_mask, save_image, save_mask, sidecar_path)


def test_pgm8_bytes_map_directly(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 128, 255, 64]))
    np.testing.assert_array_equal(load_image(path), [[0, 128], [255, 64]])


def test_pgm_header_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# made by hand\n3 1 # width height\n255\n" + bytes([1, 2, 3]))
    np.testing.assert_array_equal(load_image(path), [[1, 2, 3]])


def test_pgm16_full_scale(tmp_path):
    path = tmp_path / "b.pgm"
    path.write_bytes(b"P5\n1 1\n65535\n\xff\xff")
    assert load_image(path, "pgm16")[0, 0] == 255.0


def test_pgm16_is_big_endian(tmp_path):
    path = tmp_path / "e.pgm"
    save_image(np.array([[255.0, 0.0]]), path, "pgm16")
    assert path.read_bytes().endswith(b"\xff\xff\x00\x00")


def test_save_constant_pgm8(tmp_path):
    path = tmp_path / "k.pgm"
    save_image(np.full((3, 4), 100.0), path, "pgm8")
    assert path.read_bytes().endswith(bytes([100] * 12))


def test_pgm8_clip_and_half_even(tmp_path):
    path = tmp_path / "r.pgm"
    save_image(np.array([[255.7, -3.0, 2.5, 3.5]]), path, "pgm8")
    assert list(path.read_bytes()[-4:]) == [255, 0, 2, 4]


def test_raw_roundtrip_is_lossless(tmp_path, rng):
    img = rng.uniform(-1e3, 1e3, (17, 23))
    path = tmp_path / "x.f64"
    save_image(img, path)
    back = load_image(path)
    assert np.max(np.abs(back - img)) == 0
    assert json.loads(sidecar_path(path).read_text()) == {"width": 23, "height": 17}


def test_raw_is_little_endian(tmp_path):
    path = tmp_path / "one.f64"
    save_image(np.array([[1.0]]), path)
    assert path.read_bytes() == np.array([1.0], dtype="<f8").tobytes()


def test_nan_is_rejected(tmp_path):
    with pytest.raises(ValueError):
        save_image(np.array([[np.nan]]), tmp_path / "n.f64")


@pytest.mark.parametrize("payload, error", [
    (b"P6\n2 2\n255\n" + bytes(12), MalformedHeaderError),
    (b"P5\n2 x\n255\n" + bytes(4), MalformedHeaderError),
    (b"P5\n0 2\n255\n", MalformedHeaderError),
    (b"P5\n2 2\n255\n" + bytes(3), TruncatedDataError),
    (b"P5\n70000 70000\n255\n", DimensionOverflowError),
])
def test_distinct_read_errors(tmp_path, payload, error):
    path = tmp_path / "bad.pgm"
    path.write_bytes(payload)
    with pytest.raises(error):
        load_image(path)


def test_raw_truncated(tmp_path):
    path = tmp_path / "t.f64"
    save_image(np.zeros((4, 4)), path)
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(TruncatedDataError):
        load_image(path)


def test_raw_bad_sidecar(tmp_path):
    path = tmp_path / "s.f64"
    save_image(np.zeros((2, 2)), path)
    sidecar_path(path).write_text('{"width": 2}')
    with pytest.raises(MalformedHeaderError):
        load_image(path)


def test_mask_file_roundtrip(tmp_path):
    mask = SamplingMask(5, 4, [0, 3, 19])
    path = tmp_path / "mask.json"
    save_mask(mask, path)
    assert json.loads(path.read_text()) == {"width": 5, "height": 4, "indices": [0, 3, 19]}
    assert load_mask(path).indices.tolist() == [0, 3, 19]
