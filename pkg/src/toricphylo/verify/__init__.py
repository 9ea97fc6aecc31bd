"""Theorem-level checks built on the model and lattice layers."""
from .faces import (
    OrbitResult, OrbitSpec, Type1Face, face_type1, is_face, minimal_face,
    orbit_component_count, two_vertex_tree, supporting_functional,
)
from .fibers import (
    DisconnectedFiber, FiberSpec, GenerationResult, check_generation, enumerate_fiber,
    enumerate_fiber_indices, replay_disconnected_fiber,
)
from .kernels import (
    DimensionReport, KernelReport, MainTheoremResult, annihilates, check_inclusion,
    check_main_theorem, dimension_report, fiber_cardinality, kernel_lattice, kernels_for,
    non_claw_topologies,
)
from .kimura import (
    check_exact_sequence, check_index_equality, check_kernel_in_image, image_of_f,
    kimura_relations_pullback, kimura_socket_map, xor_kernel,
)
