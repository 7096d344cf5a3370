from spectra.geometry.domains import Domain, load_domain, builtin_domain, parse_domain_text, annulus
from spectra.geometry.domains import polygon_area, polygon_perimeter, interior_angles, point_in_domain
from spectra.geometry.meshes import Mesh, triangulate, refine, mesh_hierarchy, prolongation_p1
from spectra.geometry.quadrature import BoundaryQuadrature, split_nodes
from spectra.geometry.quadrature import triangle_quadrature, edge_midpoint_quadrature, line_quadrature
