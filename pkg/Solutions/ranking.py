import logging
from collections import Counter
from fractions import Fraction

from .exceptions import EmptyProblem
from .models import RankedSuggestion
from .normalizer import restore_identifiers

logger = logging.getLogger(__name__)


def program_order(group):
    return -group.duplicate_count, group.earliest_submission, group.normalized_text


def rank_programs(groups):
    """Most duplicated first; ties go to the earlier program, then to the smaller text."""
    return sorted(groups, key=program_order)


def rank_identifier_maps(group):
    """(IdentifierMap, count) pairs for whole-map matches, most frequent first.

    Two maps only count together when every placeholder maps to the same name.
    """
    counts = Counter(group.identifier_maps)
    return sorted(counts.items(), key=lambda item: (-item[1], item[0].serialize()))


def _representative(group, identifier_map):
    for member_id, member_map in zip(group.member_ids, group.identifier_maps):
        if member_map == identifier_map:
            return member_id
    return group.member_ids[0]


def suggest(problem_id, groups, k, m, baseline=False):
    """The top ``k`` programs of a problem, each with its top ``m`` identifier maps.

    The program text uses the most popular map. With ``baseline`` the groups
    hold raw sources, which are suggested as they are.
    """
    if not groups:
        raise EmptyProblem(problem_id)
    total = sum(group.duplicate_count for group in groups)
    suggestions = []
    for rank, group in enumerate(rank_programs(groups)[:k], start=1):
        variants = rank_identifier_maps(group)
        top_map = variants[0][0]
        if baseline:
            program_text = group.normalized_text
            shown = ()
        else:
            program_text = restore_identifiers(group.normalized_text, top_map)
            shown = tuple(variants[:m])
        suggestions.append(RankedSuggestion(
            rank=rank,
            program_text=program_text,
            duplicate_count=group.duplicate_count,
            identifier_variants=shown,
            coverage_share=Fraction(group.duplicate_count, total),
            normalized_text=group.normalized_text,
            representative_id=_representative(group, top_map),
        ))
    if len(groups) < k:
        logger.debug('Problem %s has %d unique programs, fewer than k=%d', problem_id, len(groups), k)
    return suggestions
