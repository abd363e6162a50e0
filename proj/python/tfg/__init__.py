"""Topological full groups of one-sided shifts of finite type.

Exact groupoid homology, Matsumoto's isomorphism criterion, colour-preserving
tree almost automorphisms, and certified completions with prescribed local
prime content. All arithmetic is exact; graphs, elements and certificates
travel as the same text formats the `tfg` CLI uses."""

from tfg._core import (
    BoundExhausted,
    ClosureTooLarge,
    GroupTooLarge,
    UnsupportedInfinite,
    abelianization,
    adjacency_matrix,
    build_completion,
    compose_elements,
    determinant,
    elements_equal,
    graph_from_matrix,
    homology,
    invert_element,
    is_diconnected,
    is_non_circular,
    kernel_basis,
    local_prime_content,
    matsumoto_equivalent,
    matui_graph,
    multi_prime_family_graph,
    random_element,
    smith_normal_form,
    to_dot,
    validate_certificate,
)

__all__ = [
    "BoundExhausted",
    "ClosureTooLarge",
    "GroupTooLarge",
    "UnsupportedInfinite",
    "abelianization",
    "adjacency_matrix",
    "build_completion",
    "compose_elements",
    "determinant",
    "elements_equal",
    "graph_from_matrix",
    "homology",
    "invert_element",
    "is_diconnected",
    "is_non_circular",
    "kernel_basis",
    "local_prime_content",
    "matsumoto_equivalent",
    "matui_graph",
    "multi_prime_family_graph",
    "random_element",
    "smith_normal_form",
    "to_dot",
    "validate_certificate",
]
