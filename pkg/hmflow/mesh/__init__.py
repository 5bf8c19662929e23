from hmflow.mesh.disk import DiskMesh, build_disk_mesh
from hmflow.mesh.export import write_mesh
from hmflow.mesh.geometry import geometry_map, map_reference_points
from hmflow.mesh.interval import IntervalMesh, build_interval_mesh

__all__ = [
    "DiskMesh",
    "IntervalMesh",
    "build_disk_mesh",
    "build_interval_mesh",
    "geometry_map",
    "map_reference_points",
    "write_mesh",
]
