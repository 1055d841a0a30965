import random
from collections import Counter

from django.test import SimpleTestCase

from Solutions.corpus import filter_valid, group_by_problem, load_corpus
from Solutions.dedup import Grouping, baseline_deduplicate, deduplicate
from Solutions.metrics import top_n_coverage
from Solutions.models import IdentifierMap
from Solutions.normalizer import normalize
from Solutions.pipeline import normalize_all, process_problem
from Solutions.ranking import rank_programs

from . import CORPUS
from .synthetic import generate_corpus, oracle_coverage, oracle_groups
from .test_corpus import make_submission


def texts_and_counts(groups):
    return sorted((group.normalized_text, group.duplicate_count) for group in groups)


class DeduplicateTests(SimpleTestCase):

    def test_three_and_two(self):
        sources = ['a = int(input())\nprint(a * 2)\n'] * 3 + ['print(int(input()) * 2)\n'] * 2
        submissions = [make_submission('s{}'.format(i), submitted_at=i, source=source)
                       for i, source in enumerate(sources)]
        groups = deduplicate([normalize(submission) for submission in submissions], submissions)
        self.assertEqual(sorted(group.duplicate_count for group in groups), [2, 3])
        self.assertEqual(groups[0].member_ids, ('s0', 's1', 's2'))
        self.assertEqual(groups[0].earliest_submission, 0)

    def test_all_distinct(self):
        submissions = [make_submission(str(i), source='print({})\n'.format(i)) for i in range(4)]
        groups = deduplicate([normalize(submission) for submission in submissions], submissions)
        self.assertEqual([group.duplicate_count for group in groups], [1, 1, 1, 1])

    def test_single_submission(self):
        submission = make_submission('only')
        groups = deduplicate([normalize(submission)], [submission])
        self.assertEqual(len(groups), 1)
        self.assertEqual(groups[0].duplicate_count, 1)

    def test_comment_difference_only_merges_after_normalization(self):
        submissions = [make_submission('a', source='print(1)\n'), make_submission('b', source='print(1)  # hi\n')]
        self.assertEqual(len(baseline_deduplicate(submissions)), 2)
        self.assertEqual(len(deduplicate([normalize(s) for s in submissions], submissions)), 1)

    def test_maps_follow_members(self):
        submissions = [make_submission('a', submitted_at=2, source='x = 1\n'),
                       make_submission('b', submitted_at=1, source='y = 1\n')]
        group, = deduplicate([normalize(s) for s in submissions], {s.id: s for s in submissions})
        self.assertEqual(group.member_ids, ('b', 'a'))
        self.assertEqual([m.serialize() for m in group.identifier_maps], ['VAR01=y', 'VAR01=x'])

    def test_baseline_members_have_empty_maps(self):
        group, = baseline_deduplicate([make_submission('a')])
        self.assertEqual(group.identifier_maps, (IdentifierMap(),))

    def test_order_independence(self):
        submissions, _ = generate_corpus(seed=7, size=60)
        programs = [normalize(submission) for submission in submissions]
        expected = texts_and_counts(deduplicate(programs, submissions))
        rng = random.Random(7)
        for _ in range(5):
            shuffled = list(programs)
            rng.shuffle(shuffled)
            self.assertEqual(texts_and_counts(deduplicate(shuffled, submissions)), expected)
            self.assertEqual(deduplicate(shuffled, submissions), deduplicate(programs, submissions))


class GroupingMergeTests(SimpleTestCase):

    def setUp(self):
        submissions, _ = generate_corpus(seed=11, size=90)
        self.programs = [(normalize(s).text, s.id, s.submitted_at) for s in submissions]

    def grouping(self, programs):
        grouping = Grouping()
        for text, submission_id, submitted_at in programs:
            grouping.add(text, submission_id, submitted_at)
        return grouping

    def test_shards_merge_to_the_sequential_result(self):
        whole = self.grouping(self.programs).freeze()
        first, second, third = (self.grouping(self.programs[i::3]) for i in range(3))
        self.assertEqual(first.merge(second).merge(third).freeze(), whole)
        self.assertEqual(first.merge(second.merge(third)).freeze(), whole)
        self.assertEqual(third.merge(first).merge(second).freeze(), whole)

    def test_merge_leaves_operands_alone(self):
        left = self.grouping(self.programs[:10])
        right = self.grouping(self.programs[10:20])
        before = len(left)
        left.merge(right)
        self.assertEqual(len(left), before)

    def test_merge_with_empty(self):
        grouping = self.grouping(self.programs)
        self.assertEqual(grouping.merge(Grouping()).freeze(), grouping.freeze())


class SyntheticOracleTests(SimpleTestCase):

    def test_groups_and_coverage_match_the_oracle(self):
        for seed in range(20):
            with self.subTest(seed=seed):
                submissions, classes = generate_corpus(seed)
                programs, outliers = normalize_all(submissions)
                self.assertEqual(outliers, [])
                groups = deduplicate(programs, submissions)

                texts = [program.text for program in programs]
                ids = [program.submission_id for program in programs]
                expected = sorted(sorted(ids[index] for index in group) for group in oracle_groups(texts))
                self.assertEqual(sorted(sorted(group.member_ids) for group in groups), expected)

                # every template collapses to exactly one group
                self.assertEqual(sorted(group.duplicate_count for group in groups),
                                 sorted(Counter(classes).values()))

                counts = [group.duplicate_count for group in rank_programs(groups)]
                for n in range(len(counts) + 2):
                    self.assertEqual(top_n_coverage(counts, n), oracle_coverage(counts, n))


class DominanceTests(SimpleTestCase):

    def test_random_corpora(self):
        for seed in range(100, 200):
            with self.subTest(seed=seed):
                submissions, _ = generate_corpus(seed, size=random.Random(seed).randint(1, 40))
                result = process_problem('SYN', submissions)
                self.assertLessEqual(len(result.groups), len(result.baseline_groups))
                self.assertLessEqual(len(result.baseline_groups), len(submissions))
                self.assertEqual(sum(group.duplicate_count for group in result.groups), len(submissions))
                self.assertEqual(sum(group.duplicate_count for group in result.baseline_groups), len(submissions))

                counts = [group.duplicate_count for group in rank_programs(result.groups)]
                self.assertEqual(counts, sorted(counts, reverse=True))
                curve = [coverage for _, coverage in result.report.coverage_curve]
                self.assertEqual(curve, sorted(curve))
                self.assertEqual(curve[-1], 1)
                self.assertLessEqual(result.report.unique_ratio, result.report.baseline_ratio)


class FixtureMergeTests(SimpleTestCase):

    def test_three_disguised_approaches(self):
        problems = group_by_problem(filter_valid(load_corpus(CORPUS), 'Python3'))
        result = process_problem('MERGE', problems['MERGE'])
        self.assertEqual([group.duplicate_count for group in rank_programs(result.groups)], [6, 4, 2])
        self.assertEqual(len(result.baseline_groups), 12)
        self.assertEqual(result.outliers, ())

    def test_broken_submission_is_an_outlier(self):
        problems = group_by_problem(filter_valid(load_corpus(CORPUS), 'Python3'))
        result = process_problem('ADD', problems['ADD'])
        self.assertEqual([outlier.submission_id for outlier in result.outliers], ['a11'])
        self.assertEqual(sum(group.duplicate_count for group in result.groups), 10)
        self.assertEqual(len(result.baseline_groups), 10)
