"""Reconstruction of finite discrete-time dynamical systems from symbolic data.

The pipeline runs observed system -> subshift -> timeseries data ->
reconstructed system, with the morphisms at each stage.
"""

from .dynsys import (
    Colimit,
    DynDiagram,
    DynMorphism,
    FiniteDynSys,
    check_semiconjugacy,
    colimit,
    compose,
    find_conjugacy,
    identity_morphism,
    iterate,
    reachable_restriction,
    subsample,
)
from .observe import (
    Measurement,
    ObservedSystem,
    ObsMorphism,
    check_obs_morphism,
    delay_embed,
    generate_subshift,
    identity_observation,
    make_observed_system,
    observe_orbit,
    orbit_system,
)
from .recon import (
    ReconResult,
    consistency_check,
    induced_recon_morphism,
    jump_reduction,
    reconstruct,
    semiconjugacy_from_tsd_morphism,
)
from .shift import (
    SlidingBlockCode,
    SubshiftPresentation,
    apply_sbc,
    compose_sbc,
    contains_word,
    induced_word_map,
    is_valid_sbc,
    prune,
    sbc_image_presentation,
    words,
)
from .tsd import (
    TimeSeriesData,
    TsdMorphism,
    check_tsd_morphism,
    compose_tsd_morphisms,
    data_functor,
    extend_tsd_morphism,
    tsd_from_sequence,
    tsd_inclusion,
    validate_tsd,
    word_functor,
)
