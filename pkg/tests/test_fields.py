import random
from fractions import Fraction

import pytest

from nquiver.fields import PrimeField, RationalField, field_from_spec


def sample(field, rng, k=12):
    if isinstance(field, PrimeField):
        return [rng.randrange(field.p) for _ in range(k)]
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(k)]


@pytest.mark.parametrize("field", [RationalField(), PrimeField(5), PrimeField(2)])
def test_field_axioms(field):
    rng = random.Random(7)
    xs = sample(field, rng)
    for a in xs:
        for b in xs:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            assert field.sub(a, b) == field.add(a, field.neg(b))
            for c in xs[:4]:
                lhs = field.mul(a, field.add(b, c))
                rhs = field.add(field.mul(a, b), field.mul(a, c))
                assert lhs == rhs
        assert field.add(a, field.zero) == a
        assert field.mul(a, field.one) == a
        if not field.is_zero(a):
            assert field.mul(a, field.inv(a)) == field.one


def test_coerce_and_format():
    qq = RationalField()
    assert qq.coerce("2/3") == Fraction(2, 3)
    assert qq.coerce(4) == Fraction(4)
    assert qq.format(Fraction(-1, 2)) == "-1/2"
    f7 = PrimeField(7)
    assert f7.coerce("2/3") == (2 * pow(3, -1, 7)) % 7
    assert f7.coerce(-1) == 6
    assert f7.format(f7.coerce(-1)) == "6"


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_division_by_zero():
    for field in (RationalField(), PrimeField(3)):
        with pytest.raises(ZeroDivisionError):
            field.inv(field.zero)


def test_field_from_spec():
    assert field_from_spec("rat") == RationalField()
    assert field_from_spec("fp:11") == PrimeField(11)
    with pytest.raises(ValueError):
        field_from_spec("gf:9")
    with pytest.raises(ValueError):
        field_from_spec("fp:10")


def test_field_equality_and_hash():
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert RationalField() != PrimeField(5)
    assert hash(PrimeField(5)) == hash(PrimeField(5))
