"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json

import boxpleat


def main():
    cube = boxpleat.Polycube.parse("0 0 0\n")
    assert len(cube) == 1
    assert len(cube.boundary_faces()) == 6

    l_tromino = boxpleat.Polycube.from_cells([(0, 0, 0), (1, 0, 0), (1, 1, 0)])
    assert l_tromino.interior_face_count() == 2

    for mode in boxpleat.MODES:
        result = boxpleat.compile(l_tromino, mode)
        assert result.passed, result.report["details"]
        pattern = result.pattern
        assert (pattern.width, pattern.height) == boxpleat.paper_size(3, mode)
        print(f"{mode:14s} {pattern.width}x{pattern.height} creases={len(pattern)}")

    seamed = boxpleat.compile(l_tromino, "rect-seam", seam="0 0 0 -z")
    assert seamed.report["seamed_faces"] == ["0 0 0 -z"]

    text = seamed.pattern.to_fold()
    assert json.loads(text)["file_spec"] == 1.1
    again = boxpleat.CreasePattern.from_fold(text)
    assert again.creases() == seamed.pattern.creases()
    assert boxpleat.verify(again, l_tromino)["passed"]
    assert not boxpleat.verify(again, cube)["passed"]

    assert seamed.pattern.to_svg().startswith("<?xml")
    assert "\nf " in seamed.pattern.to_obj()

    try:
        boxpleat.Polycube.parse("0 0 0\n2 0 0\n")
    except ValueError as e:
        print("rejected disconnected input:", e)
    else:
        raise AssertionError("disconnected polycube accepted")

    print("ok")


if __name__ == "__main__":
    main()
