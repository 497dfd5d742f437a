import itertools
import math
import os
import tempfile
import unittest
from fractions import Fraction

import pytest

import mixvol
from mixvol import (
    DimensionMismatchError,
    MalformedQueryError,
    NotPositiveSemidefiniteError,
)
from mixvol.discriminant import (
    certify_psd,
    check_diagonal_discriminant_bezout,
    check_discriminant_bezout,
    check_discriminant_reverse_kt,
    check_pointwise_wedge_inequality,
    diagonal_bezout_constant,
    dump_matrix,
    gamma_from_matrices,
    load_matrix,
    mixed_discriminant,
    mixed_discriminant_by_interpolation,
    SymMatrix,
)
from mixvol.harness.generators import (
    InstanceGenerator,
    trial_seed,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")


class TestSymMatrix(unittest.TestCase):
    def test_symmetry_required(self):
        with pytest.raises(ValueError):
            SymMatrix([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            SymMatrix([[1, 2]])

    def test_arithmetic(self):
        a = SymMatrix([[2, 1], [1, "1/2"]])
        assert a.det() == 0
        assert (a + SymMatrix.identity(2)).det() == Fraction(7, 2)
        assert a.scale(2)[1, 1] == 1
        assert a.quadratic_form([1, -2]) == 0
        assert a.principal([1]).rows == ((Fraction(1, 2),),)
        assert SymMatrix.diagonal([1, 2, 3]).is_diagonal
        assert not a.is_diagonal

    def test_files(self):
        a = SymMatrix([["1/3", -1], [-1, 4]])
        assert SymMatrix.from_json(a.to_json()) == a
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "a.json")
            dump_matrix(a, path)
            assert load_matrix(path) == a
        with pytest.raises(DimensionMismatchError):
            SymMatrix.from_json('{"dim": 3, "rows": [["1"]]}')
        for entry in ("1.5", "1e3", "1/0", "0x10"):
            with pytest.raises(ValueError):
                SymMatrix.from_json('{"dim": 1, "rows": [["' + entry + '"]]}')


class TestCertifyPsd(unittest.TestCase):
    def test_identity(self):
        certificate = certify_psd(SymMatrix.identity(3))
        assert certificate.is_pd and certificate.is_psd
        assert certificate.verify()

    def test_semidefinite(self):
        certificate = certify_psd(SymMatrix.diagonal([1, 0]))
        assert certificate.is_psd
        assert not certificate.is_pd
        assert certificate.verify()

    def test_zero_diagonal_witness(self):
        m = SymMatrix([[0, 1], [1, 0]])
        certificate = certify_psd(m)
        assert not certificate.is_psd
        assert certificate.witness == (1, -1)
        assert m.quadratic_form(certificate.witness) == -2
        assert certificate.verify()

    def test_negative_pivot_witness(self):
        m = SymMatrix([[1, 2], [2, 1]])
        certificate = certify_psd(m)
        assert not certificate.is_psd
        assert m.quadratic_form(certificate.witness) < 0
        assert certificate.verify()

    def test_random_gram_matrices(self):
        for trial in range(test_util.trials(50, 10)):
            gen = InstanceGenerator(trial_seed(5, trial), 2 + trial % 4)
            rank = gen.integer(1, gen.dim)
            certificate = certify_psd(gen.psd_matrix(rank=rank))
            assert certificate.is_psd
            assert certificate.verify()
            if rank < gen.dim:
                assert not certificate.is_pd


class TestMixedDiscriminant(unittest.TestCase):
    def test_equal_arguments_give_determinant(self):
        a = SymMatrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
        assert mixed_discriminant([(a, 3)]) == 4
        assert mixed_discriminant([(a, 1), (a, 2)]) == 4
        assert mixed_discriminant([(SymMatrix.identity(4), 4)]) == 1

    def test_diagonal_pair(self):
        a = SymMatrix.diagonal([2, 3])
        b = SymMatrix.diagonal([5, 7])
        assert mixed_discriminant([(a, 1), (b, 1)]) == Fraction(2 * 7 + 3 * 5, 2)

    def test_malformed(self):
        with pytest.raises(MalformedQueryError):
            mixed_discriminant([(SymMatrix.identity(2), 1)])
        with pytest.raises(MalformedQueryError):
            mixed_discriminant([])
        with pytest.raises(DimensionMismatchError):
            mixed_discriminant([(SymMatrix.identity(2), 1), (SymMatrix.identity(3), 1)])

    def test_symmetric_and_multilinear(self):
        gen = InstanceGenerator(trial_seed(8, 0), 3)
        a, a2, b, c = (gen.psd_matrix() for _ in range(4))
        values = {mixed_discriminant([(x, 1), (y, 1), (z, 1)]) for x, y, z in itertools.permutations((a, b, c))}
        assert len(values) == 1
        assert mixed_discriminant([(a + a2, 1), (b, 1), (c, 1)]) == mixed_discriminant(
            [(a, 1), (b, 1), (c, 1)]
        ) + mixed_discriminant([(a2, 1), (b, 1), (c, 1)])

    def test_agrees_with_interpolation(self):
        for trial in range(test_util.trials(100, 12)):
            n = 2 + trial % 4
            gen = InstanceGenerator(trial_seed(77, trial), n)
            a = gen.multiplicities(n)
            a[-1] += n - sum(a)
            entries = [(gen.psd_matrix(rank=gen.integer(1, n)), multiplicity) for multiplicity in a]
            value = mixed_discriminant(entries, cross_check=True)
            assert value == mixed_discriminant_by_interpolation(entries)
            assert value >= 0


class TestPointwiseWedge(unittest.TestCase):
    def test_all_ones(self):
        n, k = 4, 2
        gamma = {index: 1 for index in itertools.combinations(range(n), n - k)}
        report = check_pointwise_wedge_inequality(SymMatrix.identity(n), gamma, k)
        assert report.lhs == math.comb(n, k)
        assert report.rhs == math.comb(n, k) ** 2
        assert report.ratio == math.comb(n, k)
        assert report.holds

    def test_single_eigenvalue(self):
        n, k = 3, 1
        gamma = {index: Fraction(i + 1, 3) for i, index in enumerate(itertools.combinations(range(n), n - k))}
        report = check_pointwise_wedge_inequality(SymMatrix.diagonal([1, 0, 0]), gamma, k)
        assert report.holds
        assert report.lhs == gamma[(1, 2)]

    def test_full_degree_is_equality(self):
        report = check_pointwise_wedge_inequality(SymMatrix.diagonal([2, 3, 5]), {(): Fraction(7, 2)}, 3)
        assert report.lhs == report.rhs == 105

    def test_errors(self):
        with pytest.raises(NotPositiveSemidefiniteError):
            check_pointwise_wedge_inequality(SymMatrix.diagonal([1, -1]), {(0,): 1, (1,): 1}, 1)
        with pytest.raises(ValueError):
            check_pointwise_wedge_inequality(SymMatrix.diagonal([1, 1]), {(0,): -1, (1,): 1}, 1)
        with pytest.raises(ValueError):
            check_pointwise_wedge_inequality(SymMatrix([[1, 1], [1, 1]]), {(0,): 1, (1,): 1}, 1)
        with pytest.raises(MalformedQueryError):
            check_pointwise_wedge_inequality(SymMatrix.identity(2), {(0,): 1}, 1)

    def test_gamma_from_matrices(self):
        assert gamma_from_matrices([], 3) == {(): 1}
        gamma = gamma_from_matrices([SymMatrix.identity(3)], 3)
        assert gamma == {(0,): 1, (1,): 1, (2,): 1}
        for trial in range(test_util.trials(50, 8)):
            gen = InstanceGenerator(trial_seed(31, trial), 3)
            k = gen.integer(1, 3)
            forms = [gen.psd_matrix() for _ in range(3 - k)]
            mu = SymMatrix.diagonal([gen.rational(0) for _ in range(3)])
            assert check_pointwise_wedge_inequality(mu, gamma_from_matrices(forms, 3), k).holds


class TestDiscriminantBezout(unittest.TestCase):
    def test_identities(self):
        n = 4
        identity = SymMatrix.identity(n)
        report = check_discriminant_bezout([(identity, 1), (identity, 2)], identity, 2)
        assert report.lhs == math.comb(n, 2)
        assert report.rhs == math.comb(n, 1) * math.comb(n, 2)
        assert report.holds

    def test_preconditions(self):
        identity = SymMatrix.identity(2)
        indefinite = SymMatrix([[1, 2], [2, 1]])
        with pytest.raises(NotPositiveSemidefiniteError) as excinfo:
            check_discriminant_bezout([(indefinite, 1)], identity, 1)
        assert excinfo.value.certificate.witness is not None
        with pytest.raises(NotPositiveSemidefiniteError):
            check_discriminant_bezout([(identity, 1)], SymMatrix.diagonal([1, 0]), 1)
        with pytest.raises(MalformedQueryError):
            check_discriminant_bezout([(identity, 1)], identity, 2)

    def test_random_instances(self):
        for trial in range(test_util.trials(500, 20)):
            n = 2 + trial % 4
            gen = InstanceGenerator(trial_seed(500, trial), n)
            a = gen.multiplicities(n)
            entries = [(gen.psd_matrix(rank=gen.integer(1, n)), multiplicity) for multiplicity in a]
            for k in range(1, len(a) + 1):
                assert check_discriminant_bezout(entries, gen.psd_matrix(definite=True), k).holds

    def test_diagonal_constant(self):
        assert diagonal_bezout_constant(2, [1, 1]) == 2
        assert diagonal_bezout_constant(3, [1]) == 1
        for trial in range(test_util.trials(200, 20)):
            n = 2 + trial % 3
            gen = InstanceGenerator(trial_seed(600, trial), n)
            entries = [(gen.psd_matrix(diagonal=True), multiplicity) for multiplicity in gen.multiplicities(n)]
            report = check_diagonal_discriminant_bezout(entries, gen.psd_matrix(definite=True, diagonal=True))
            assert report.inequality_id == "discriminant-bezout-diagonal"
            assert report.holds

    def test_diagonal_constant_needs_diagonal_matrices(self):
        m = SymMatrix([[2, 1], [1, 2]])
        with pytest.raises(ValueError):
            check_diagonal_discriminant_bezout([(m, 1)], SymMatrix.identity(2))
        report = check_diagonal_discriminant_bezout([(m, 1)], SymMatrix.identity(2), require_diagonal=False)
        assert report.inequality_id == "discriminant-diagonal-constant-search"

    def test_reverse_kt(self):
        for trial in range(test_util.trials(100, 10)):
            n = 2 + trial % 3
            gen = InstanceGenerator(trial_seed(700, trial), n)
            k = gen.integer(1, n)
            forms = [gen.psd_matrix() for _ in range(n - k)]
            report = check_discriminant_reverse_kt(gen.psd_matrix(), gen.psd_matrix(definite=True), forms, k)
            assert report.holds
        with pytest.raises(MalformedQueryError):
            check_discriminant_reverse_kt(SymMatrix.identity(2), SymMatrix.identity(2), [], 1)
