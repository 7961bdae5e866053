from enum import Enum


class MtlTaskKind(str, Enum):
    """
    The five auxiliary transformations of multi-task-learning augmentation
    """
    SWAP = "swap"
    TOKEN = "token"
    SOURCE = "source"
    REVERSE = "reverse"
    REPLACE = "replace"


class AugmentMethod(str, Enum):
    MTL = "mtl"
    BOUNDARY = "boundary"
    EDA = "eda"
    EMBED = "embed"


class EdaOperation(str, Enum):
    """
    Enumeration of the four EDA operations, in canonical (seeded choice) order
    """
    SYNONYM_REPLACEMENT = "synonym-replacement"
    RANDOM_INSERTION = "random-insertion"
    RANDOM_SWAP = "random-swap"
    RANDOM_DELETION = "random-deletion"


class AugmentSide(str, Enum):
    SOURCE = "source"
    TARGET = "target"


class IssueCategory(str, Enum):
    """
    Translation issue labels used by BLEU-band triage
    """
    COLLOCATION = "collocation"
    WORD_BY_WORD = "word-by-word"
    NUMBER_AMBIGUITY = "number-ambiguity"
    UNKNOWN = "unknown"


class BleuBucket(str, Enum):
    ALMOST_USELESS = "Almost useless"
    HARD_TO_GET_GIST = "Hard to get the gist"
    GIST_CLEAR = "The gist is clear, but there are substantial grammatical errors present"
    UNDERSTANDABLE = "Understandable to good translations"
    HIGH_QUALITY = "High quality translations"
    VERY_HIGH_QUALITY = "Very high quality, adequate, and fluent translations"
    BETTER_THAN_HUMAN = "Quality often better than human"
