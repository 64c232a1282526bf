import pytest
from hypothesis import given
from strategies import profiles

from chaintree.core import (
    ROOT,
    AttachPoint,
    ChainProfile,
    PruferSequence,
    RootedDiagram,
    ViolationKind,
    check_diagram,
    element_name,
    parse_attach_point,
    parse_element_name,
    validate_diagram,
)
from chaintree.errors import InvariantViolation, ParseError


class TestNames:

    def test_letters_then_long_form(self):
        assert element_name(1) == "a"
        assert element_name(26) == "z"
        assert element_name(27) == "e27"

    def test_parse_element_name(self):
        assert parse_element_name("f") == 6
        assert parse_element_name("e30") == 30
        with pytest.raises(ParseError):
            parse_element_name("e5")
        with pytest.raises(ParseError):
            parse_element_name("g", k=6)
        with pytest.raises(ParseError):
            parse_element_name("A")


class TestAttachPoint:

    def test_root_sorts_first(self):
        assert ROOT < AttachPoint(1, 1) < AttachPoint(1, 2) < AttachPoint(2, 1)
        assert ROOT.is_root and ROOT.render() == "0"

    @pytest.mark.parametrize("element,subscript", [(0, 1), (1, 0), (-1, -1)])
    def test_rejects_half_root(self, element, subscript):
        with pytest.raises(ValueError):
            AttachPoint(element, subscript)

    def test_render_long_form(self):
        assert AttachPoint(2, 2).render() == "b2"
        assert AttachPoint(27, 1).render() == "e27_1"


class TestParseAttachPoint:

    def test_known_values(self, six_chains):
        assert parse_attach_point("0", six_chains) == ROOT
        assert parse_attach_point("c2", six_chains) == AttachPoint(3, 2)
        assert parse_attach_point("e2", six_chains) == AttachPoint(5, 2)

    def test_subscript_out_of_range(self):
        with pytest.raises(ParseError):
            parse_attach_point("c3", ChainProfile.regular(3, 3))

    def test_color_beyond_k(self):
        with pytest.raises(ParseError):
            parse_attach_point("d1", ChainProfile.regular(3, 3))

    @pytest.mark.parametrize("text", ["", "A1", "a0", "a", "1a", "a-1", "b 2", "e27"])
    def test_malformed(self, six_chains, text):
        with pytest.raises(ParseError):
            parse_attach_point(text, six_chains)

    def test_long_form(self):
        profile = ChainProfile.regular(2, 30)
        assert parse_attach_point("e27_1", profile) == AttachPoint(27, 1)
        with pytest.raises(ParseError):
            parse_attach_point("e5_1", profile)

    @given(profiles())
    def test_render_parse_identity(self, profile):
        for point in profile.alphabet():
            assert parse_attach_point(point.render(), profile) == point


class TestChainProfile:

    @pytest.mark.parametrize("q", range(1, 7))
    @pytest.mark.parametrize("k", range(1, 9))
    def test_regular_alphabet_size(self, q, k):
        profile = ChainProfile.regular(q, k)
        assert profile.alphabet_size == (q - 1) * k + 1
        assert len(profile.alphabet()) == profile.alphabet_size
        assert profile.q == q and profile.is_regular

    def test_irregular(self):
        profile = ChainProfile.parse("1,2,3")
        assert profile.lengths == (1, 2, 3)
        assert not profile.is_regular and profile.q is None
        assert profile.alphabet_size == 4
        assert profile.rotations == 6
        assert [p.render() for p in profile.alphabet()] == ["0", "b1", "c1", "c2"]

    @given(profiles())
    def test_alphabet_is_sorted(self, profile):
        alphabet = profile.alphabet()
        assert list(alphabet) == sorted(set(alphabet))
        assert alphabet[0] == ROOT

    @pytest.mark.parametrize("lengths", [(), (0,), (2, -1)])
    def test_rejects_bad_lengths(self, lengths):
        with pytest.raises(ValueError):
            ChainProfile(lengths)

    def test_parse_error(self):
        with pytest.raises(ParseError):
            ChainProfile.parse("1,x")
        with pytest.raises(ParseError):
            ChainProfile.parse("")


class TestValidation:

    def test_valid(self):
        diagram = RootedDiagram(ChainProfile.regular(3, 2), (ROOT, AttachPoint(1, 1)))
        assert validate_diagram(diagram) is None
        assert check_diagram(diagram) is diagram

    def test_two_cycle(self):
        diagram = RootedDiagram(
            ChainProfile.regular(3, 2), (AttachPoint(2, 1), AttachPoint(1, 1)))
        violation = validate_diagram(diagram)
        assert violation.kind is ViolationKind.CYCLE
        assert violation.elements == (1, 2)
        assert "{a, b}" in violation.message

    def test_self_attachment(self):
        diagram = RootedDiagram(ChainProfile.regular(2, 1), (AttachPoint(1, 1),))
        assert validate_diagram(diagram).kind is ViolationKind.SELF_ATTACHMENT

    def test_bad_subscript(self):
        diagram = RootedDiagram(ChainProfile.regular(3, 2), (ROOT, AttachPoint(1, 3)))
        violation = validate_diagram(diagram)
        assert violation.kind is ViolationKind.BAD_ATTACH_POINT
        assert violation.elements == (2,)

    def test_wrong_size(self):
        diagram = RootedDiagram(ChainProfile.regular(3, 2), (ROOT,))
        assert validate_diagram(diagram).kind is ViolationKind.WRONG_SIZE

    def test_check_raises(self):
        diagram = RootedDiagram(
            ChainProfile.regular(2, 3), (AttachPoint(3, 1), ROOT, AttachPoint(1, 1)))
        with pytest.raises(InvariantViolation) as excinfo:
            check_diagram(diagram)
        assert excinfo.value.violation.kind is ViolationKind.CYCLE
        assert excinfo.value.violation.elements == (1, 3)

    def test_longer_cycle_behind_a_tail(self):
        # d hangs from a, and a -> b -> c -> a
        parents = (AttachPoint(2, 1), AttachPoint(3, 1), AttachPoint(1, 1), AttachPoint(1, 1))
        violation = validate_diagram(RootedDiagram(ChainProfile.regular(2, 4), parents))
        assert violation.kind is ViolationKind.CYCLE
        assert violation.elements == (1, 2, 3)


class TestRootedDiagram:

    def test_structure(self, worked_diagram):
        assert worked_diagram.roots == (4, 5)
        assert worked_diagram.children_of(2) == (3, 6)
        assert worked_diagram.children_of(3) == ()
        assert [worked_diagram.depth(e) for e in range(1, 7)] == [2, 3, 4, 1, 1, 4]

    def test_from_mapping(self, six_chains, worked_diagram):
        mapping = dict(worked_diagram)
        assert RootedDiagram.from_mapping(six_chains, mapping) == worked_diagram
        del mapping[3]
        with pytest.raises(ValueError, match="c"):
            RootedDiagram.from_mapping(six_chains, mapping)

    def test_depth_of_cycle(self):
        diagram = RootedDiagram(
            ChainProfile.regular(3, 2), (AttachPoint(2, 1), AttachPoint(1, 1)))
        with pytest.raises(InvariantViolation):
            diagram.depth(1)


class TestPruferSequence:

    def test_parse_render(self, six_chains):
        sequence = PruferSequence.parse("b2,0,b1,a1,e2", six_chains)
        assert len(sequence) == 5
        assert sequence.tokens[1] == ROOT
        assert sequence.render() == "b2,0,b1,a1,e2"

    def test_single_element(self):
        sequence = PruferSequence.parse("", ChainProfile.regular(3, 1))
        assert sequence.tokens == ()
        assert sequence.render() == ""

    def test_wrong_length(self, six_chains):
        with pytest.raises(ParseError):
            PruferSequence.parse("b2,0", six_chains)
        with pytest.raises(InvariantViolation):
            PruferSequence(six_chains, (ROOT,))

    def test_token_out_of_bounds(self):
        with pytest.raises(InvariantViolation):
            PruferSequence(ChainProfile.regular(2, 2), (AttachPoint(1, 2),))
