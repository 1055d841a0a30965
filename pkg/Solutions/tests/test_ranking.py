from fractions import Fraction

from django.test import SimpleTestCase

from Solutions.exceptions import EmptyProblem
from Solutions.models import IdentifierMap, UniqueProgram
from Solutions.ranking import rank_identifier_maps, rank_programs, suggest


def identifier_map(**names):
    return IdentifierMap(tuple(names.items()))


def group(text, count, earliest=0, maps=None, prefix='s'):
    maps = maps or [IdentifierMap()] * count
    return UniqueProgram(
        normalized_text=text,
        member_ids=tuple('{}{}'.format(prefix, index) for index in range(count)),
        identifier_maps=tuple(maps),
        earliest_submission=earliest,
    )


class RankProgramsTests(SimpleTestCase):

    def test_descending_counts(self):
        groups = [group('print(2)\n', 2), group('print(5)\n', 5), group('print(3)\n', 3)]
        self.assertEqual([g.duplicate_count for g in rank_programs(groups)], [5, 3, 2])

    def test_tie_goes_to_the_earlier_program(self):
        groups = [group('print(1)\n', 4, earliest=100), group('print(2)\n', 4, earliest=50)]
        self.assertEqual([g.earliest_submission for g in rank_programs(groups)], [50, 100])

    def test_then_to_the_smaller_text(self):
        groups = [group('print(b)\n', 1), group('print(a)\n', 1)]
        self.assertEqual([g.normalized_text for g in rank_programs(groups)], ['print(a)\n', 'print(b)\n'])

    def test_single_group(self):
        only = group('print(1)\n', 1)
        self.assertEqual(rank_programs([only]), [only])


class RankIdentifierMapsTests(SimpleTestCase):

    def test_whole_maps_are_counted(self):
        xy = identifier_map(VAR01='x', VAR02='y')
        xs = identifier_map(VAR01='x', VAR02='s')
        maps = [xy, xs, xy, xs, xy]
        ranked = rank_identifier_maps(group('VAR01, VAR02 = 1, 2\n', 5, maps=maps))
        self.assertEqual(ranked, [(xy, 3), (xs, 2)])

    def test_ties_are_ordered_by_serialized_map(self):
        ab = identifier_map(VAR01='b')
        aa = identifier_map(VAR01='a')
        self.assertEqual(rank_identifier_maps(group('VAR01 = 1\n', 2, maps=[ab, aa])), [(aa, 1), (ab, 1)])


class SuggestTests(SimpleTestCase):

    def setUp(self):
        xy = identifier_map(VAR01='x', VAR02='y')
        xs = identifier_map(VAR01='x', VAR02='s')
        self.groups = [
            group('print(VAR01)\n', 2, earliest=5, maps=[identifier_map(VAR01='q')] * 2, prefix='p'),
            group('VAR01, VAR02 = 1, 2\nprint(VAR01 + VAR02)\n', 5, earliest=1, maps=[xs, xy, xy, xs, xy]),
            group('print(3)\n', 3, earliest=9, prefix='t'),
        ]

    def test_top_suggestion_uses_the_most_common_map(self):
        first = suggest('P', self.groups, k=3, m=3)[0]
        self.assertEqual(first.rank, 1)
        self.assertEqual(first.program_text, 'x, y = 1, 2\nprint(x + y)\n')
        self.assertEqual([count for _, count in first.identifier_variants], [3, 2])
        self.assertEqual(first.representative_id, 's1')
        self.assertEqual(first.coverage_share, Fraction(1, 2))

    def test_mixed_map_is_never_synthesized(self):
        first = suggest('P', self.groups, k=1, m=5)[0]
        self.assertEqual([m.serialize() for m, _ in first.identifier_variants],
                         ['VAR01=x,VAR02=y', 'VAR01=x,VAR02=s'])

    def test_ranks_and_counts(self):
        suggestions = suggest('P', self.groups, k=3, m=1)
        self.assertEqual([s.rank for s in suggestions], [1, 2, 3])
        self.assertEqual([s.duplicate_count for s in suggestions], [5, 3, 2])
        self.assertEqual(sum(s.coverage_share for s in suggestions), 1)
        self.assertTrue(all(len(s.identifier_variants) == 1 for s in suggestions))

    def test_k_is_clamped(self):
        self.assertEqual(len(suggest('P', self.groups, k=10, m=3)), 3)
        self.assertEqual(len(suggest('P', self.groups, k=2, m=3)), 2)

    def test_single_group_covers_everything(self):
        only, = suggest('P', [group('print(1)\n', 4)], k=5, m=3)
        self.assertEqual(only.coverage_share, 1)

    def test_variant_counts_add_up(self):
        for suggestion in suggest('P', self.groups, k=3, m=10):
            self.assertEqual(sum(count for _, count in suggestion.identifier_variants), suggestion.duplicate_count)

    def test_empty_problem(self):
        with self.assertRaises(EmptyProblem):
            suggest('P', [], k=5, m=3)

    def test_baseline_keeps_the_raw_text(self):
        raw = [group('x=1  # raw\n', 2)]
        only, = suggest('P', raw, k=5, m=3, baseline=True)
        self.assertEqual(only.program_text, 'x=1  # raw\n')
        self.assertEqual(only.identifier_variants, ())
