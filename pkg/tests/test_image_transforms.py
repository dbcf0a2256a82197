"""HSV conversions, parametric shifts, JPEG round trip, mean factors."""

import numpy as np
import pytest

from repaxes.errors import ParameterError, ValidationError
from repaxes.fixtures.media import gen_gradient_image, gen_speckle_image
from repaxes.image import (
    HueShift,
    brightness_shift,
    hsv_to_rgb,
    hue_shift,
    jpeg_compress,
    mean_hsv,
    rgb_to_hsv,
    saturation_shift,
)


def solid(r, g, b, shape=(4, 4)):
    img = np.empty(shape + (3,), dtype=np.float32)
    img[..., 0], img[..., 1], img[..., 2] = r, g, b
    return img


def test_pure_red_hsv():
    hsv = rgb_to_hsv(solid(1.0, 0.0, 0.0))
    np.testing.assert_allclose(hsv[0, 0], [0.0, 1.0, 1.0], atol=1e-6)


def test_gray_hsv_uses_zero_hue_convention():
    hsv = rgb_to_hsv(solid(0.5, 0.5, 0.5))
    np.testing.assert_allclose(hsv[0, 0], [0.0, 0.0, 0.5], atol=1e-6)


def test_random_pixels_round_trip():
    rng = np.random.default_rng(0)
    img = rng.uniform(0.0, 1.0, size=(10, 10, 3)).astype(np.float32)
    back = hsv_to_rgb(rgb_to_hsv(img))
    np.testing.assert_allclose(back, img, atol=1e-5)


def test_out_of_range_image_rejected():
    bad = np.full((2, 2, 3), 1.2, dtype=np.float32)
    with pytest.raises(ValidationError):
        rgb_to_hsv(bad)


def test_hue_shift_zero_is_identity():
    img = gen_speckle_image(1)
    np.testing.assert_allclose(hue_shift(img, 0.0), img, atol=1e-5)


def test_hue_shift_half_twice_is_identity():
    img = gen_speckle_image(2)
    twice = hue_shift(hue_shift(img, 0.5), 0.5)
    np.testing.assert_allclose(twice, img, atol=1e-4)


def test_hue_shift_red_to_green():
    shifted = hue_shift(solid(1.0, 0.0, 0.0), 1.0 / 3.0)
    np.testing.assert_allclose(shifted[0, 0], [0.0, 1.0, 0.0], atol=1e-4)


def test_hue_shift_composition_wraps():
    img = gen_speckle_image(3)
    composed = hue_shift(hue_shift(img, 0.3), 0.4)
    direct = hue_shift(img, -0.3)
    np.testing.assert_allclose(composed, direct, atol=1e-4)


@pytest.mark.parametrize("bad", [0.6, -0.51, float("nan")])
def test_hue_shift_rejects_out_of_range(bad):
    with pytest.raises(ParameterError):
        hue_shift(gen_speckle_image(0, 4, 4), bad)


def test_saturation_shift_zero_is_identity():
    img = gen_speckle_image(4)
    np.testing.assert_allclose(saturation_shift(img, 0.0), img, atol=1e-5)


def test_saturation_shift_plus_two_saturates():
    img = gen_speckle_image(5)  # value channel >= 0.15, so hue is defined
    hsv = rgb_to_hsv(saturation_shift(img, 2.0))
    assert np.all(hsv[..., 1] > 1.0 - 1e-4)


def test_brightness_minus_two_is_black():
    out = brightness_shift(gen_speckle_image(6), -2.0)
    np.testing.assert_allclose(out, 0.0, atol=1e-6)


def test_brightness_round_trip_where_unclamped():
    img = gen_speckle_image(7)
    v = rgb_to_hsv(img)[..., 2]
    back = brightness_shift(brightness_shift(img, 0.1), -0.1)
    mask = v <= 0.9 - 1e-3
    assert mask.sum() > 100
    np.testing.assert_allclose(back[mask], img[mask], atol=1e-5)


@pytest.mark.parametrize("bad", [2.1, -2.1])
def test_channel_shift_rejects_out_of_range(bad):
    img = gen_speckle_image(0, 4, 4)
    with pytest.raises(ParameterError):
        saturation_shift(img, bad)
    with pytest.raises(ParameterError):
        brightness_shift(img, bad)


def test_jpeg_q100_gradient_error_bound():
    img = gen_gradient_image()
    out = jpeg_compress(img, 100.0)
    assert out.shape == img.shape
    assert float(np.max(np.abs(out - img))) <= 0.02


@pytest.mark.parametrize("quality", [0.0, 37.6, 95.0])
def test_jpeg_preserves_shape(quality):
    img = gen_speckle_image(8, 33, 47)  # odd sizes exercise codec padding
    out = jpeg_compress(img, quality)
    assert out.shape == img.shape
    assert out.dtype == np.float32
    assert float(out.min()) >= 0.0 and float(out.max()) <= 1.0


def test_jpeg_low_quality_hurts_more():
    img = gen_speckle_image(9)
    err_low = float(np.mean(np.abs(jpeg_compress(img, 5.0) - img)))
    err_high = float(np.mean(np.abs(jpeg_compress(img, 95.0) - img)))
    assert err_low > err_high


def test_jpeg_rejects_out_of_range_quality():
    with pytest.raises(ParameterError):
        jpeg_compress(gen_gradient_image(8, 8), 101.0)


def test_mean_hsv_constant_gray():
    m = mean_hsv(solid(0.5, 0.5, 0.5))
    assert (m.hue, m.saturation, m.value) == (0.0, 0.0, pytest.approx(0.5, abs=1e-6))
    assert not m.hue_degenerate


def test_mean_hsv_antipodal_hues_degenerate():
    img = solid(1.0, 0.0, 0.0, shape=(4, 4))
    img[:, 2:] = [0.0, 1.0, 1.0]  # cyan occupies half the image
    m = mean_hsv(img)
    assert m.hue == 0.0
    assert m.hue_degenerate


def test_mean_hsv_constant_green():
    m = mean_hsv(solid(0.0, 1.0, 0.0))
    assert m.hue == pytest.approx(1.0 / 3.0, abs=1e-6)
    assert not m.hue_degenerate


def test_mean_hue_tracks_hue_shift():
    img = gen_speckle_image(10)
    base = mean_hsv(img)
    assert not base.hue_degenerate
    for h in (-0.4, -0.1, 0.2, 0.45):
        shifted = mean_hsv(hue_shift(img, h))
        diff = (shifted.hue - base.hue - h) % 1.0
        assert min(diff, 1.0 - diff) < 1e-3


def test_transform_classes_match_functions():
    img = gen_speckle_image(11)
    est = HueShift(shift=0.25)
    assert est.get_params() == {"shift": 0.25}
    np.testing.assert_array_equal(est.fit().transform(img), hue_shift(img, 0.25))
