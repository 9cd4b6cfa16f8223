"""t-spanners, exact BFS trees and geometric reachability oracles for
directed transmission graphs."""

from .core import Site, SpannerParams, load_sites, make_sites, save_sites, \
    spanner_parameters
from .spanner import (SpannerGraph, build_spanner_general,
                      build_spanner_radius_ratio, build_spanner_spread)
from .bfs import bfs_tree
from .reachability import BaseOracle, GeomOracle, cover_set, geom_reach

__all__ = [
    "Site", "SpannerParams", "load_sites", "make_sites", "save_sites",
    "spanner_parameters", "SpannerGraph", "build_spanner_spread",
    "build_spanner_radius_ratio", "build_spanner_general", "bfs_tree",
    "BaseOracle", "GeomOracle", "cover_set", "geom_reach",
]

__version__ = "0.1.0"
