"""PGM I/O, cropping, and outline drawing."""

import numpy as np
import pytest

from texelkit import GrayImage, PgmError, Rect, crop, draw_rect_outline, load_pgm, save_pgm

from conftest import make_image, random_image


class TestGrayImage:
    def test_dimensions(self):
        img = make_image([[1, 2, 3], [4, 5, 6]])
        assert img.height == 2 and img.width == 3

    def test_rejects_non_2d(self):
        with pytest.raises(ValueError):
            GrayImage(np.zeros((2, 2, 3), dtype=np.uint8))
        with pytest.raises(ValueError):
            GrayImage(np.zeros(4, dtype=np.uint8))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            GrayImage(np.array([[0, 256]], dtype=np.int64))
        with pytest.raises(ValueError):
            GrayImage(np.array([[-1, 0]], dtype=np.int64))

    def test_rejects_float_dtype(self):
        with pytest.raises(ValueError):
            GrayImage(np.zeros((2, 2), dtype=np.float64))

    def test_pixels_read_only(self):
        img = make_image([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 9

    def test_equality_is_pixelwise(self):
        a = make_image([[1, 2], [3, 4]])
        b = make_image([[1, 2], [3, 4]])
        c = make_image([[1, 2], [3, 5]])
        assert a == b and a != c and a != "not an image"

    def test_transposed(self):
        img = make_image([[1, 2, 3], [4, 5, 6]])
        t = img.transposed()
        assert t.height == 3 and t.width == 2
        assert t.pixels[2, 1] == 6


class TestPgmRoundTrip:
    def test_roundtrip_random_images_both_modes(self, rng):
        for _ in range(40):
            h = int(rng.integers(1, 33))
            w = int(rng.integers(1, 33))
            img = random_image(rng, h, w)
            for mode in ("P5", "P2"):
                assert load_pgm(save_pgm(img, mode)) == img

    def test_p5_layout_is_deterministic(self):
        img = make_image([[0, 128], [255, 7]])
        data = save_pgm(img)
        assert data == b"P5\n2 2\n255\n" + bytes([0, 128, 255, 7])
        assert save_pgm(img) == data

    def test_p2_lines_within_70_chars(self, rng):
        img = random_image(rng, 9, 50)
        for line in save_pgm(img, "P2").decode("ascii").splitlines():
            assert len(line) <= 70

    def test_save_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            save_pgm(make_image([[0]]), "P6")


class TestPgmParsing:
    def test_p2_with_comments_and_whitespace(self):
        data = b"P2 # format\n# a comment line\n 3 # width\n2\n255\n1 2 3\n4 5 6\n"
        img = load_pgm(data)
        assert img == make_image([[1, 2, 3], [4, 5, 6]])

    def test_p5_comment_before_dimensions(self):
        data = b"P5\n#ignore me\n2 1\n255\n" + bytes([9, 10])
        assert load_pgm(data) == make_image([[9, 10]])

    def test_maxval_scaling_not_applied(self):
        # samples are taken as-is for any maxval <= 255
        data = b"P2\n2 1\n100\n0 100\n"
        assert load_pgm(data) == make_image([[0, 100]])

    def test_p5_trailing_bytes_ignored(self):
        data = b"P5\n2 1\n255\n" + bytes([1, 2]) + b"garbage"
        assert load_pgm(data) == make_image([[1, 2]])

    @pytest.mark.parametrize(
        "data",
        [
            b"",
            b"P6\n1 1\n255\n\x00",
            b"P5\n0 1\n255\n",
            b"P5\n1 1\n256\n\x00",
            b"P5\n1 1\n65535\n\x00\x00",
            b"P5\n2 2\n255\n\x00\x00\x00",
            b"P2\n2 1\n255\n5",
            b"P2\n1 1\n100\n101\n",
            b"P2\n1 1\n255\nxy\n",
            b"P5\n1 x\n255\n\x00",
            b"P5\n1 1\n",
        ],
    )
    def test_malformed_inputs_raise(self, data):
        with pytest.raises(PgmError):
            load_pgm(data)

    def test_pgm_error_is_value_error(self):
        assert issubclass(PgmError, ValueError)


class TestCrop:
    def test_crop_matches_slice(self, rng):
        img = random_image(rng, 12, 17)
        r = Rect(3, 2, 5, 7)
        assert np.array_equal(crop(img, r).pixels, img.pixels[2:9, 3:8])

    def test_crop_composition(self, rng):
        # cropping twice equals cropping once with composed offsets
        img = random_image(rng, 20, 20)
        outer = Rect(2, 3, 12, 14)
        inner = Rect(4, 5, 6, 7)
        once = crop(img, Rect(2 + 4, 3 + 5, 6, 7))
        assert crop(crop(img, outer), inner) == once

    def test_crop_out_of_bounds(self):
        img = make_image([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            crop(img, Rect(1, 0, 2, 1))
        with pytest.raises(ValueError):
            crop(img, Rect(0, 0, 0, 1))


class TestDrawRectOutline:
    def test_band_pixel_count(self, rng):
        # an outline of thickness t covers w*h - (w-2t)*(h-2t) pixels
        img = GrayImage(np.zeros((20, 24), dtype=np.uint8))
        for t, (w, h) in [(1, (10, 8)), (2, (9, 11)), (3, (7, 6))]:
            out = draw_rect_outline(img, Rect(4, 3, w, h), 255, t)
            expect = w * h - (w - 2 * t) * (h - 2 * t)
            assert int((out.pixels == 255).sum()) == expect

    def test_interior_and_exterior_untouched(self, rng):
        img = random_image(rng, 16, 16)
        r = Rect(4, 4, 8, 8)
        out = draw_rect_outline(img, r, 200, 2)
        # interior preserved
        assert np.array_equal(out.pixels[6:10, 6:10], img.pixels[6:10, 6:10])
        # exterior preserved
        assert np.array_equal(out.pixels[:4, :], img.pixels[:4, :])
        assert np.array_equal(out.pixels[:, 12:], img.pixels[:, 12:])

    def test_source_image_unmodified(self, rng):
        img = random_image(rng, 8, 8)
        before = img.pixels.copy()
        draw_rect_outline(img, Rect(1, 1, 5, 5), 0, 1)
        assert np.array_equal(img.pixels, before)

    def test_exact_double_thickness_fills_rect(self):
        img = GrayImage(np.zeros((10, 10), dtype=np.uint8))
        out = draw_rect_outline(img, Rect(0, 0, 4, 4), 255, 2)
        assert int((out.pixels == 255).sum()) == 16

    def test_too_thick_outline_rejected(self):
        img = GrayImage(np.zeros((10, 10), dtype=np.uint8))
        with pytest.raises(ValueError):
            draw_rect_outline(img, Rect(0, 0, 4, 4), 255, 3)

    def test_bad_value_or_thickness(self):
        img = GrayImage(np.zeros((10, 10), dtype=np.uint8))
        with pytest.raises(ValueError):
            draw_rect_outline(img, Rect(0, 0, 6, 6), 256, 1)
        with pytest.raises(ValueError):
            draw_rect_outline(img, Rect(0, 0, 6, 6), 255, 0)
