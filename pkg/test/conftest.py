# test/conftest.py
# Fixtures partagées: répertoire de logs isolé et profils d'exemple

import os
import tempfile
from fractions import Fraction

# Avant tout import du paquet: les chemins de logs sont figés à l'import des constantes
os.environ.setdefault("HK_CONSENSUS_HOME", tempfile.mkdtemp(prefix="hk_consensus_test_"))
os.environ.pop("HK_CONSENSUS_WORKERS", None)

import pytest  # noqa: E402

from hk_consensus.core.params import ArithmeticMode, ModelParams  # noqa: E402
from hk_consensus.core.profile import OpinionProfile  # noqa: E402


def make_profile(values, mode=ArithmeticMode.FLOAT) -> OpinionProfile:
    """Profil canonique à partir de valeurs décimales ('0.4' -> 2/5 en rationnel)."""
    if ArithmeticMode.parse(mode) is ArithmeticMode.RATIONAL:
        return OpinionProfile.from_values([Fraction(str(v)) for v in values], mode)
    return OpinionProfile.from_values(values, mode)


@pytest.fixture
def three_agents() -> OpinionProfile:
    return make_profile([0.0, 0.4, 0.8])


@pytest.fixture
def three_agents_exact() -> OpinionProfile:
    return make_profile(["0", "0.4", "0.8"], ArithmeticMode.RATIONAL)


@pytest.fixture
def half() -> ModelParams:
    return ModelParams(0.5)


@pytest.fixture
def half_exact() -> ModelParams:
    return ModelParams(Fraction(1, 2), mode=ArithmeticMode.RATIONAL)


@pytest.fixture
def profile_of():
    """Fabrique de profils pour les tests paramétrés."""
    return make_profile
