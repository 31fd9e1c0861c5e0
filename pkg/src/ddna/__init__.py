"""DNA arc-diagram calculus.

Words over {A, C, G, T} with reverse-complement duality, typed
noncrossing matchings between them, composition by gluing with loop
erasure, the bending correspondence between diagrams and secondary
structures, zip-and-transfer composition on complementary interfaces,
folding enumeration, and a functor from pregroup grammars whose
contractions become Watson-Crick duplex pairings.
"""

from .core import (
    ALPHABET,
    AlphabetError,
    DotBracketError,
    SecondaryStructure,
    StructureError,
    Violation,
    brackets_of,
    canonical_word,
    complement,
    emit_dotbracket,
    is_complementary,
    pair_class,
    parse_dotbracket,
    reverse_complement,
    structure_from_brackets,
    structure_violations,
)
from .diagram import (
    DdnaFormatError,
    Diagram,
    DiagramError,
    InterfaceError,
    LoopReport,
    bend,
    bond_count,
    coevaluation,
    compose,
    emit_ddna,
    evaluation,
    format_report,
    identity,
    parse_ddna,
    structure_as_diagram,
    tensor,
    tensor_all,
    unbend,
    validate,
    zip_and_transfer,
)
from .pregroup import (
    Lexicon,
    LexiconEntry,
    LexiconError,
    PregroupType,
    ReductionProof,
    SimpleTerm,
    TypeSyntaxError,
    all_reductions,
    find_reduction,
    functor_object,
    functor_reduction,
    load_lexicon,
    load_lexicon_file,
    meaning,
    parse_type,
    proof_violations,
)
from .render import (
    RenderStyle,
    render_diagram_svg,
    render_structure_svg,
    render_structure_text,
)
from .structures import (
    FoldConfig,
    count_structures,
    enumerate_structures,
    is_member,
    max_bond,
)

__version__ = "0.1.0"
