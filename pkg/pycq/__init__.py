from .core import VertexSet
from .core import format_label
from .core import parse_label
from .core import default_workers

from .topology import CrossedCube
from .topology import Construction
from .topology import pair_related
from .topology import is_adjacent_flat
from .topology import neighbors
from .topology import cross_partner
from .topology import build_recursive
from .topology import decompose
from .topology import reassemble

from .structure import components
from .structure import classify_shape
from .structure import profile
from .structure import is_g_extra_cut
from .structure import is_g_extra_faulty_set
from .structure import connectivity
from .structure import extra_connectivity
from .structure import enumerate_min_extra_cuts
from .structure import classify_lemma
from .structure import lemma_sweep
from .structure import odd_components

from .extremal import build_A
from .extremal import witness_bundle
from .extremal import cq4_exceptional_cut
from .extremal import connected_subsets
from .extremal import tightly_super_check

from .diagnosis import DiagnosisModel
from .diagnosis import pmc_distinguishable
from .diagnosis import mm_distinguishable
from .diagnosis import distinguishable
from .diagnosis import generate_syndrome
from .diagnosis import syndrome_compatible
from .diagnosis import oracle_distinguishable
from .diagnosis import is_g_extra_t_diagnosable
from .diagnosis import extra_diagnosability

from .enumeration import Checkpoint

from .io import export_edge_list
from .io import export_dot
from .io import export_json
from .io import write_report

from .visual import plot_histogram
from .visual import graph

from .pycq_exceptions import PycqError
from .pycq_exceptions import BudgetError
from .pycq_exceptions import WitnessError
