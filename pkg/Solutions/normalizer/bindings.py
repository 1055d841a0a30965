"""Scope analysis deciding which name occurrences may be anonymized.

Every Name token is classified as either part of a user binding (and may be
renamed) or fixed.  Fixed names are builtins, attributes, unaliased
``from``-imports, keyword arguments of callables we cannot see, names bound in
class bodies (they are reached through attributes) and dunder names.
"""
import ast
import bisect
import builtins
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from ..exceptions import ParseError
from ..models import IdentifierCategory
from . import fstrings
from .syntax import parse
from .tokens import TokenKind, tokenize

logger = logging.getLogger(__name__)

BUILTIN_NAMES = frozenset(dir(builtins))

MODULE = 'module'
FUNCTION = 'function'
LAMBDA = 'lambda'
CLASS = 'class'
COMPREHENSION = 'comprehension'


@dataclass(frozen=True)
class Occurrence:
    binding_id: str
    category: IdentifierCategory
    original: str


@dataclass(frozen=True)
class BindingTable:
    occurrences: Dict[Tuple[int, int], Occurrence]
    # positions of ``import name`` statements that need an ``as`` alias once renamed
    aliases: FrozenSet[Tuple[int, int]] = frozenset()

    def get(self, position):
        return self.occurrences.get(position)


class Scope:
    def __init__(self, kind, parent, index, node=None):
        self.kind = kind
        self.parent = parent
        self.index = index
        self.node = node
        self.declared_global = set()
        self.declared_nonlocal = set()
        self.locals = {}        # name -> first binding position

    def __repr__(self):
        return '<Scope {} #{}>'.format(self.kind, self.index)


@dataclass
class _Bind:
    scope: Scope
    name: str
    position: Tuple[int, int]
    category: IdentifierCategory
    pinned: bool = False
    needs_alias: bool = False
    definition: object = None


@dataclass
class _Binding:
    name: str
    scope: Scope
    sites: list = field(default_factory=list)
    pinned: bool = False

    @property
    def binding_id(self):
        return '{}:{}'.format(self.scope.index, self.name)

    @property
    def category(self):
        return min(self.sites, key=lambda site: site.position).category

    @property
    def definitions(self):
        return [site.definition for site in self.sites if site.definition is not None]


class _NameIndex:
    """Name and keyword tokens ordered by position, for nodes that carry no name position."""

    def __init__(self, stream):
        self.tokens = [tok for tok in stream if tok.kind in (TokenKind.NAME, TokenKind.KEYWORD)]
        self.positions = [tok.position for tok in self.tokens]

    def _from(self, position):
        return bisect.bisect_left(self.positions, position)

    def find_name(self, text, after):
        for tok in self.tokens[self._from(after):]:
            if tok.kind == TokenKind.NAME and tok.text == text:
                return tok.position
        return None

    def find_keyword(self, text, after):
        for tok in self.tokens[self._from(after):]:
            if tok.kind == TokenKind.KEYWORD and tok.text == text:
                return tok.position
        return None

    def name_after(self, position):
        index = self._from(position)
        if position in self.positions[index:index + 1]:
            index += 1
        for tok in self.tokens[index:]:
            if tok.kind == TokenKind.NAME:
                return tok
        return None


def _after(position):
    line, column = position
    return line, column + 1


def _is_dunder(name):
    return len(name) > 4 and name.startswith('__') and name.endswith('__')


class _ScopeBuilder(ast.NodeVisitor):

    def __init__(self, tree, names):
        self.tree = tree
        self.names = names
        self.scopes = []
        self.binds = []
        self.refs = []          # (scope, name, position)
        self.calls = []         # (scope, Call node)
        self.fstring_ranges = []  # (start, end, scope)
        self.function_scopes = {}
        self.module = self._new_scope(MODULE, None, tree.module)
        self.current = self.module

    def _new_scope(self, kind, parent, node):
        scope = Scope(kind, parent, len(self.scopes), node)
        self.scopes.append(scope)
        return scope

    def _bind(self, name, position, category, scope=None, **flags):
        if position is None:
            logger.debug('no token found for binding %s', name)
            return
        self.binds.append(_Bind(scope or self.current, name, position, category, **flags))

    def _ref(self, name, position, scope=None):
        if position is not None:
            self.refs.append((scope or self.current, name, position))

    def _enter(self, kind, node):
        scope = self._new_scope(kind, self.current, node)
        previous, self.current = self.current, scope
        return previous

    def _visit_all(self, nodes):
        for node in nodes:
            if node is not None:
                self.visit(node)

    # expressions

    def visit_Name(self, node):
        position = self.tree.start(node)
        if isinstance(node.ctx, ast.Load):
            self._ref(node.id, position)
        else:
            self._bind(node.id, position, IdentifierCategory.VAR)

    def visit_JoinedStr(self, node):
        # interpolated names are resolved from the token text later
        self.fstring_ranges.append((self.tree.start(node), self.tree.end(node), self.current))

    visit_TemplateStr = visit_JoinedStr

    def visit_NamedExpr(self, node):
        self.visit(node.value)
        scope = self.current
        while scope.kind == COMPREHENSION:
            scope = scope.parent
        self._bind(node.target.id, self.tree.start(node.target), IdentifierCategory.VAR, scope=scope)

    def visit_Call(self, node):
        self.calls.append((self.current, node))
        self.generic_visit(node)

    def _visit_arguments(self, args):
        self._visit_all(args.defaults)
        self._visit_all(args.kw_defaults)

    def _visit_annotations(self, args):
        for arg in args.posonlyargs + args.args + args.kwonlyargs + [args.vararg, args.kwarg]:
            if arg is not None and arg.annotation is not None:
                self.visit(arg.annotation)

    def _bind_parameters(self, args):
        for arg in args.posonlyargs + args.args + args.kwonlyargs + [args.vararg, args.kwarg]:
            if arg is not None:
                self._bind(arg.arg, self.tree.start(arg), IdentifierCategory.ARG)

    def visit_Lambda(self, node):
        self._visit_arguments(node.args)
        previous = self._enter(LAMBDA, node)
        self._bind_parameters(node.args)
        self.visit(node.body)
        self.current = previous

    def _comprehension(self, node, elements):
        generators = node.generators
        self.visit(generators[0].iter)
        previous = self._enter(COMPREHENSION, node)
        for index, generator in enumerate(generators):
            if index:
                self.visit(generator.iter)
            self.visit(generator.target)
            self._visit_all(generator.ifs)
        self._visit_all(elements)
        self.current = previous

    def visit_ListComp(self, node):
        self._comprehension(node, [node.elt])

    visit_SetComp = visit_ListComp
    visit_GeneratorExp = visit_ListComp

    def visit_DictComp(self, node):
        self._comprehension(node, [node.key, node.value])

    # statements

    def visit_FunctionDef(self, node):
        self._visit_all(node.decorator_list)
        self._visit_arguments(node.args)
        self._visit_annotations(node.args)
        if node.returns is not None:
            self.visit(node.returns)
        position = self.names.find_name(node.name, self.tree.start(node))
        self._bind(node.name, position, IdentifierCategory.FUNC, definition=node)
        previous = self._enter(FUNCTION, node)
        self.function_scopes[node] = self.current
        self._bind_parameters(node.args)
        self._visit_all(node.body)
        self.current = previous

    visit_AsyncFunctionDef = visit_FunctionDef

    def visit_ClassDef(self, node):
        self._visit_all(node.decorator_list)
        self._visit_all(node.bases)
        self._visit_all(keyword.value for keyword in node.keywords)
        position = self.names.find_name(node.name, self.tree.start(node))
        self._bind(node.name, position, IdentifierCategory.CLASS, definition=node)
        previous = self._enter(CLASS, node)
        self._visit_all(node.body)
        self.current = previous

    def _declare(self, node, declared):
        cursor = self.tree.start(node)
        for name in node.names:
            position = self.names.find_name(name, cursor)
            declared.add(name)
            self._ref(name, position)
            if position is not None:
                cursor = _after(position)

    def visit_Global(self, node):
        self._declare(node, self.current.declared_global)

    def visit_Nonlocal(self, node):
        self._declare(node, self.current.declared_nonlocal)

    def visit_Import(self, node):
        cursor = self.tree.start(node)
        for alias in node.names:
            head = alias.name.split('.')[0]
            position = self.names.find_name(head, cursor)
            if position is None:
                continue
            cursor = _after(position)
            if alias.asname:
                keyword_position = self.names.find_keyword('as', cursor)
                name_token = self.names.name_after(keyword_position) if keyword_position else None
                if name_token is not None:
                    self._bind(alias.asname, name_token.position, IdentifierCategory.VAR)
                    cursor = _after(name_token.position)
            elif '.' in alias.name:
                # ``import a.b`` binds ``a`` to the package, an alias would change that
                self._bind(head, position, IdentifierCategory.VAR, pinned=True)
            else:
                self._bind(head, position, IdentifierCategory.VAR, needs_alias=True)

    def visit_ImportFrom(self, node):
        cursor = self.names.find_keyword('import', self.tree.start(node))
        if cursor is None:
            return
        for alias in node.names:
            if alias.name == '*':
                continue
            position = self.names.find_name(alias.name, cursor)
            if position is None:
                continue
            cursor = _after(position)
            if alias.asname:
                keyword_position = self.names.find_keyword('as', cursor)
                name_token = self.names.name_after(keyword_position) if keyword_position else None
                if name_token is not None:
                    self._bind(alias.asname, name_token.position, IdentifierCategory.VAR)
                    cursor = _after(name_token.position)
            else:
                self._bind(alias.name, position, IdentifierCategory.VAR, pinned=True)

    def visit_ExceptHandler(self, node):
        if node.type is not None:
            self.visit(node.type)
        if node.name:
            after = self.tree.end(node.type) if node.type is not None else self.tree.start(node)
            keyword_position = self.names.find_keyword('as', after)
            name_token = self.names.name_after(keyword_position) if keyword_position else None
            if name_token is not None:
                self._bind(node.name, name_token.position, IdentifierCategory.VAR)
        self._visit_all(node.body)

    # match statements

    def visit_MatchAs(self, node):
        after = self.tree.start(node)
        if node.pattern is not None:
            self.visit(node.pattern)
            after = self.tree.end(node.pattern)
        if node.name:
            self._bind(node.name, self.names.find_name(node.name, after), IdentifierCategory.VAR)

    def visit_MatchStar(self, node):
        if node.name:
            self._bind(node.name, self.names.find_name(node.name, self.tree.start(node)), IdentifierCategory.VAR)

    def visit_MatchMapping(self, node):
        self._visit_all(node.keys)
        self._visit_all(node.patterns)
        if node.rest:
            after = self.tree.end(node.patterns[-1]) if node.patterns else self.tree.start(node)
            self._bind(node.rest, self.names.find_name(node.rest, after), IdentifierCategory.VAR)


class _Resolver:

    def __init__(self, builder, stream):
        self.builder = builder
        self.stream = stream
        self.module = builder.module
        self.bindings = {}
        self.external_keywords = set()
        self.pinned_keys = set()
        self.occurrences = {}
        self.aliases = set()

    # scope rules

    def _owner(self, bind):
        scope = bind.scope
        if bind.name in scope.declared_global:
            return self.module
        if bind.name in scope.declared_nonlocal:
            return self._enclosing(scope.parent, bind.name)
        return scope

    def _enclosing(self, scope, name):
        while scope is not None and scope.kind != MODULE:
            if scope.kind != CLASS:
                if name in scope.declared_nonlocal:
                    scope = scope.parent
                    continue
                if name in scope.locals:
                    return scope
            scope = scope.parent
        return None

    def resolve(self, scope, name, position=None):
        if name in scope.declared_global:
            return self._key(self.module, name)
        if name in scope.declared_nonlocal:
            return self._key(self._enclosing(scope.parent, name), name)
        if name in scope.locals:
            before_binding = position is not None and position < scope.locals[name]
            if not before_binding or scope.kind in (FUNCTION, LAMBDA, COMPREHENSION):
                return self._key(scope, name)
            if scope.kind == MODULE:
                # a shadowed builtin is the builtin until its first binding
                return None if name in BUILTIN_NAMES else self._key(scope, name)
        parent = scope.parent
        while parent is not None:
            if parent.kind == CLASS:
                parent = parent.parent
                continue
            if parent.kind == MODULE:
                return self._key(parent, name)
            if name in parent.declared_global:
                return self._key(self.module, name)
            if name in parent.declared_nonlocal:
                return self._key(self._enclosing(parent.parent, name), name)
            if name in parent.locals:
                return self._key(parent, name)
            parent = parent.parent
        return None

    @staticmethod
    def _key(scope, name):
        if scope is None or name not in scope.locals:
            return None
        return scope.index, name

    # phases

    def collect_bindings(self):
        deferred = []
        for bind in self.builder.binds:
            if bind.name in bind.scope.declared_nonlocal:
                deferred.append(bind)
            else:
                self._add_site(self._owner(bind), bind)
        for bind in deferred:
            owner = self._owner(bind)
            if owner is not None:
                self._add_site(owner, bind)

    def _add_site(self, owner, bind):
        first = owner.locals.get(bind.name)
        if first is None or bind.position < first:
            owner.locals[bind.name] = bind.position
        key = owner.index, bind.name
        binding = self.bindings.get(key)
        if binding is None:
            binding = self.bindings[key] = _Binding(bind.name, owner)
        binding.sites.append(bind)

    def _signature(self, key):
        """Parameter name -> owning scope for a callee bound once by ``def`` or ``class``."""
        binding = self.bindings.get(key)
        if binding is None or len(binding.sites) != 1 or not binding.definitions:
            return None
        node = binding.definitions[0]
        if isinstance(node, ast.ClassDef):
            inits = [item for item in node.body
                     if isinstance(item, (ast.FunctionDef, ast.AsyncFunctionDef)) and item.name == '__init__']
            if not inits:
                return None
            node = inits[-1]
            params = node.args.args[1:] + node.args.kwonlyargs
        else:
            params = node.args.args + node.args.kwonlyargs
        scope = self.builder.function_scopes.get(node)
        if scope is None:
            return None
        return {param.arg: scope for param in params}

    def _keyword(self, scope, callee, keyword_name, position):
        signature = self._signature(self.resolve(scope, callee)) if callee else None
        if signature is None:
            self.external_keywords.add(keyword_name)
            return None
        if keyword_name in signature:
            return position, (signature[keyword_name].index, keyword_name)
        return None

    def _unpacked_keywords(self, scope, callee):
        # ``f(**kwargs)`` passes parameters by their written names
        signature = self._signature(self.resolve(scope, callee)) if callee else None
        if signature is not None:
            self.pinned_keys.update((param_scope.index, param) for param, param_scope in signature.items())

    def collect_references(self):
        tree, names = self.builder.tree, self.builder.names
        references = []
        for scope, name, position in self.builder.refs:
            references.append((position, self.resolve(scope, name, position)))
        for scope, call in self.builder.calls:
            callee = call.func.id if isinstance(call.func, ast.Name) else None
            for keyword in call.keywords:
                if keyword.arg is None:
                    self._unpacked_keywords(scope, callee)
                    continue
                if getattr(keyword, 'lineno', None) is not None:
                    position = tree.start(keyword)
                else:
                    position = names.find_name(keyword.arg, tree.start(call))
                found = self._keyword(scope, callee, keyword.arg, position)
                if found is not None and found[0] is not None:
                    references.append(found)
        references.extend(self._fstring_references())
        return references

    def _fstring_scope(self, position):
        for start, end, scope in self.builder.fstring_ranges:
            if start <= position < end:
                return scope
        return None

    def _fstring_references(self):
        references = []
        for token in self.stream:
            if token.kind != TokenKind.STRING or not fstrings.is_fstring(token.text):
                continue
            scope = self._fstring_scope(token.position)
            if scope is None:
                continue
            for name in fstrings.field_names(token):
                if name.role == fstrings.ATTRIBUTE:
                    continue
                if name.role == fstrings.KEYWORD:
                    found = self._keyword(scope, name.callee, name.text, name.position)
                    if found is not None:
                        references.append(found)
                    continue
                key = self.resolve(scope, name.text, name.position)
                references.append((name.position, key))
                if name.debug and key is not None:
                    # ``{x=}`` prints the source text of the expression
                    self.pinned_keys.add(key)
        return references

    def _is_pinned(self, binding):
        if binding.scope.kind == CLASS or _is_dunder(binding.name):
            return True
        if any(site.pinned for site in binding.sites):
            return True
        if binding.category == IdentifierCategory.ARG and binding.name in self.external_keywords:
            return True
        return (binding.scope.index, binding.name) in self.pinned_keys

    def build(self):
        self.collect_bindings()
        references = self.collect_references()
        for key, binding in self.bindings.items():
            binding.pinned = self._is_pinned(binding)
        for binding in self.bindings.values():
            if binding.pinned:
                continue
            occurrence = Occurrence(binding.binding_id, binding.category, binding.name)
            for site in binding.sites:
                self.occurrences[site.position] = occurrence
                if site.needs_alias:
                    self.aliases.add(site.position)
        for position, key in references:
            binding = self.bindings.get(key) if key is not None else None
            if binding is None or binding.pinned:
                continue
            self.occurrences[position] = Occurrence(binding.binding_id, binding.category, binding.name)
        return BindingTable(dict(self.occurrences), frozenset(self.aliases))


def analyze_bindings(source, tree=None, stream=None):
    """Classify the name occurrences of ``source``.

    Returns a :class:`BindingTable` keyed by the (line, column) of each
    anonymizable Name token.  Occurrences of one binding share a binding id.
    """
    if tree is None:
        tree = parse(source)
    if stream is None:
        stream = tokenize(source)
    builder = _ScopeBuilder(tree, _NameIndex(stream))
    try:
        builder.visit(tree.module)
        return _Resolver(builder, stream).build()
    except RecursionError as exc:
        raise ParseError(0, 0, 'nesting too deep') from exc
