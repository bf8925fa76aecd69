"""ASCII XML unstructured-grid output for structured quad grids.

Writes one quad cell (VTK cell type 9) per grid element with point data
sampled at the grid vertices: a 3-component "velocity" array (third
component zero) and a scalar "pressure" array.
"""

from __future__ import annotations

from .grid import StructuredGrid


def _fmt(value) -> str:
    # repr of float round-trips exactly, so nodal values survive parsing
    return repr(float(value))


def write_vtu(grid: StructuredGrid, velocity, pressure, path) -> None:
    """Write fields to ``path`` in ASCII VTU form.

    ``velocity`` maps a vertex position to a sequence of at most three
    components (missing ones are padded with zero); ``pressure`` maps it to
    one number.  Vertices are written in lexicographic order from the
    lower-left corner; cell connectivity is counter-clockwise.
    """
    points = [grid.vertex_position(v) for v in range(grid.num_vertices)]

    velocity_lines = []
    for p in points:
        comps = [float(c) for c in velocity(p)]
        if len(comps) > 3:
            raise ValueError(f"velocity at {p} has {len(comps)} components")
        comps += [0.0] * (3 - len(comps))
        velocity_lines.append(" ".join(_fmt(c) for c in comps))
    pressure_lines = [_fmt(pressure(p)) for p in points]
    point_lines = [f"{_fmt(x)} {_fmt(y)} {_fmt(0.0)}" for x, y in points]

    connectivity = []
    for e in range(grid.num_elements):
        i, j = grid.cell_coords(e)
        v00 = grid.vertex_index(i, j)
        v10 = grid.vertex_index(i + 1, j)
        v11 = grid.vertex_index(i + 1, j + 1)
        v01 = grid.vertex_index(i, j + 1)
        connectivity.append(f"{v00} {v10} {v11} {v01}")
    offsets = [str(4 * (e + 1)) for e in range(grid.num_elements)]
    types = ["9"] * grid.num_elements

    lines = [
        '<?xml version="1.0"?>',
        '<VTKFile type="UnstructuredGrid" version="0.1" byte_order="LittleEndian">',
        "<UnstructuredGrid>",
        f'<Piece NumberOfPoints="{grid.num_vertices}" NumberOfCells="{grid.num_elements}">',
        '<PointData Vectors="velocity" Scalars="pressure">',
        '<DataArray type="Float64" Name="velocity" NumberOfComponents="3" format="ascii">',
        *velocity_lines,
        "</DataArray>",
        '<DataArray type="Float64" Name="pressure" NumberOfComponents="1" format="ascii">',
        *pressure_lines,
        "</DataArray>",
        "</PointData>",
        "<Points>",
        '<DataArray type="Float64" NumberOfComponents="3" format="ascii">',
        *point_lines,
        "</DataArray>",
        "</Points>",
        "<Cells>",
        '<DataArray type="Int64" Name="connectivity" format="ascii">',
        *connectivity,
        "</DataArray>",
        '<DataArray type="Int64" Name="offsets" format="ascii">',
        *offsets,
        "</DataArray>",
        '<DataArray type="UInt8" Name="types" format="ascii">',
        *types,
        "</DataArray>",
        "</Cells>",
        "</Piece>",
        "</UnstructuredGrid>",
        "</VTKFile>",
        "",
    ]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines))
