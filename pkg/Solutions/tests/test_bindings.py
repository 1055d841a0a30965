from django.test import SimpleTestCase

from Solutions.models import IdentifierCategory
from Solutions.normalizer import analyze_bindings, normalize_source


def normalized(source):
    return normalize_source(source).text


class AnalyzeBindingsTests(SimpleTestCase):

    def test_occurrences_of_one_binding_share_an_id(self):
        table = analyze_bindings('a = 1\nb = a\n')
        self.assertEqual(table.get((1, 0)).binding_id, table.get((2, 4)).binding_id)
        self.assertNotEqual(table.get((1, 0)).binding_id, table.get((2, 0)).binding_id)
        self.assertEqual(len({occurrence.binding_id for occurrence in table.occurrences.values()}), 2)

    def test_categories(self):
        table = analyze_bindings('class K:\n    pass\ndef f(p):\n    v = p\n')
        categories = {occurrence.original: occurrence.category for occurrence in table.occurrences.values()}
        self.assertEqual(categories, {'K': IdentifierCategory.CLASS, 'f': IdentifierCategory.FUNC,
                                      'p': IdentifierCategory.ARG, 'v': IdentifierCategory.VAR})

    def test_builtins_and_attributes_are_not_bindings(self):
        table = analyze_bindings('x = len(obj.items)\n')
        self.assertEqual([occurrence.original for occurrence in table.occurrences.values()], ['x'])

    def test_plain_import_needs_an_alias(self):
        table = analyze_bindings('import math\n')
        self.assertEqual(table.aliases, frozenset({(1, 7)}))


class AnonymizationScopeTests(SimpleTestCase):

    def test_unbound_names_and_attributes_stay(self):
        self.assertEqual(normalized('values = sorted(data.items())\n'), 'VAR01 = sorted(data.items())\n')

    def test_imports(self):
        self.assertEqual(normalized('from math import sqrt\nimport sys\nprint(sqrt(4), sys.argv)\n'),
                         'from math import sqrt\nimport sys as VAR01\nprint(sqrt(4), VAR01.argv)\n')

    def test_aliased_from_import(self):
        self.assertEqual(normalized('from collections import Counter as C\nc = C()\n'),
                         'from collections import Counter as VAR01\nVAR02 = VAR01()\n')

    def test_dotted_import_is_kept(self):
        source = 'import os.path\nprint(os.path.sep)\n'
        self.assertEqual(normalized(source), source)

    def test_class_body_names_are_kept(self):
        source = 'class A:\n    size = 3\n    def get(self):\n        return self.size\na = A()\n'
        self.assertEqual(normalized(source),
                         'class CLASS01:\n    size = 3\n    def get(ARG01):\n        return ARG01.size\n'
                         'VAR01 = CLASS01()\n')

    def test_parameter_used_as_keyword_of_unknown_callee_is_kept(self):
        self.assertEqual(normalized('def f(end):\n    print(1, end=end)\nf("")\n'),
                         'def FUNC01(end):\n    print(1, end=end)\nFUNC01("")\n')

    def test_parameters_of_a_callee_given_unpacked_keywords_are_kept(self):
        self.assertEqual(normalized('def f(a):\n    return a\nprint(f(**{"a": 1}))\n'),
                         'def FUNC01(a):\n    return a\nprint(FUNC01(**{"a": 1}))\n')

    def test_keyword_of_visible_function_is_renamed(self):
        self.assertEqual(normalized('def f(a, b=0):\n    return a - b\nprint(f(1, b=2))\n'),
                         'def FUNC01(ARG01, ARG02=0):\n    return ARG01 - ARG02\nprint(FUNC01(1, ARG02=2))\n')

    def test_keyword_of_class_init_is_renamed(self):
        source = 'class P:\n    def __init__(self, x):\n        self.x = x\np = P(x=1)\n'
        self.assertEqual(normalized(source),
                         'class CLASS01:\n    def __init__(ARG01, ARG02):\n        ARG01.x = ARG02\n'
                         'VAR01 = CLASS01(ARG02=1)\n')

    def test_shadowing_gives_separate_placeholders(self):
        self.assertEqual(normalized('x = 1\ndef f(x):\n    return x\n'),
                         'VAR01 = 1\n\ndef FUNC01(ARG01):\n    return ARG01\n')
        self.assertEqual(normalized('def f():\n    v = 1\n    return v\ndef g():\n    v = 2\n    return v\n'),
                         'def FUNC01():\n    VAR01 = 1\n    return VAR01\n\n'
                         'def FUNC02():\n    VAR02 = 2\n    return VAR02\n')

    def test_global_declaration_shares_the_module_binding(self):
        self.assertEqual(normalized('n = 0\ndef inc():\n    global n\n    n += 1\n'),
                         'VAR01 = 0\n\ndef FUNC01():\n    global VAR01\n    VAR01 += 1\n')

    def test_nonlocal_declaration_shares_the_enclosing_binding(self):
        source = ('def outer():\n    t = 0\n    def inner():\n        nonlocal t\n        t = 1\n'
                  '    inner()\n    return t\n')
        self.assertEqual(normalized(source),
                         'def FUNC01():\n    VAR01 = 0\n    def FUNC02():\n        nonlocal VAR01\n'
                         '        VAR01 = 1\n    FUNC02()\n    return VAR01\n')

    def test_builtin_used_before_it_is_shadowed(self):
        self.assertEqual(normalized('print(list("ab"))\nlist = [1]\nprint(list)\n'),
                         'print(list("ab"))\nVAR01 = [1]\nprint(VAR01)\n')

    def test_dunder_names_are_kept(self):
        source = '__all__ = ["x"]\n'
        self.assertEqual(normalized(source), source)

    def test_fstring_fields(self):
        self.assertEqual(normalized('name = "a"\nprint(f"{name}!")\n'), 'VAR01 = "a"\nprint(f"{VAR01}!")\n')

    def test_fstring_debug_field_pins_the_name(self):
        source = 'v = 1\nprint(f"{v=}")\n'
        self.assertEqual(normalized(source), source)

    def test_comprehension_variable(self):
        self.assertEqual(normalized('squares = [i * i for i in range(3)]\n'),
                         'VAR01 = [VAR02 * VAR02 for VAR02 in range(3)]\n')

    def test_lambda_parameters(self):
        self.assertEqual(normalized('key = lambda item: item[1]\n'), 'VAR01 = lambda ARG01: ARG01[1]\n')

    def test_exception_name(self):
        self.assertEqual(normalized('try:\n    pass\nexcept Exception as e:\n    print(e)\n'),
                         'try:\n    pass\nexcept Exception as VAR01:\n    print(VAR01)\n')

    def test_category_comes_from_the_first_binding(self):
        self.assertEqual(normalized('def f():\n    return 1\nf = 2\n'), 'def FUNC01():\n    return 1\nFUNC01 = 2\n')

    def test_non_ascii_names(self):
        result = normalize_source('größe = 1; x = größe\n')
        self.assertEqual(result.text, 'VAR01 = 1; VAR02 = VAR01\n')
        self.assertEqual(result.map.entries, (('VAR01', 'größe'), ('VAR02', 'x')))

    def test_map_records_first_occurrence_order(self):
        result = normalize_source('def solve(a, b):\n    return a + b\na, b = 1, 2\nprint(solve(a, b))\n')
        self.assertEqual(result.map.serialize(), 'FUNC01=solve,ARG01=a,ARG02=b,VAR01=a,VAR02=b')
