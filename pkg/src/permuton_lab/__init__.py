"""Pattern-avoiding permutations, the BWX bijections between monotone-sum
classes, exact uniform sampling, and permuton diagnostics around the
anti-diagonal."""

from .errors import (BoundExceeded, InnerBijectionFailure, InvalidDelta, InvalidRect, LayerOverflow,
                     NotATraversal, PermutonLabError, PreconditionViolated, ReconstructionFailure,
                     ShapeMismatch)
from .perms import (ClassSpec, avoids, contains, count_avoiders, decreasing, direct_sum, enumerate_avoiders,
                    increasing, lis, lds, parse_perm, format_perm, reverse_complement, skew_sum)
from .shapes import FerrersShape, Traversal, shape_wilf_check, traversal_contains
from .growth import forward_growth, inner_bijection, inverse_rsk, rsk
from .bwx import bwx_map, color_boxes, extract_lambda, pipeline
from .sampling import make_rng, sample_av_increasing, sample_target_class, shape_distribution
from .measure import (EmpiricalPermuton, Rect, WRegionSpec, mu_I_rect, mu_J_rect, mu_rect, mu_w,
                      oneside_check, rect_sup_distance)
from .layers import goodness, layer_partition, paths, predecessor, sequence_witness, sw_region

__version__ = "0.1.0"
