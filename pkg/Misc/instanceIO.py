# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 17:10:05 2026

Problem instances on disk: a versioned JSON document and a DOT rendering
whose edges carry the files first recovered on them.
"""

import json
import logging

from model import (DemandVector, InputError, Node, NodeKind, ProblemInstance, SystemParams, Tree,
                   as_integer)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def to_dict(instance):
    nodes = []
    for node in instance.tree.nodes:
        entry = {'id': node.id, 'kind': node.kind.value}
        if node.cache_id is not None:
            entry['cache_id'] = node.cache_id
        if node.demand is not None:
            entry['demands'] = list(node.demand.demands)
        if node.parent is not None:
            entry['parent'] = node.parent
        nodes.append(entry)
    return {'version': SCHEMA_VERSION,
            'num_files': instance.params.num_files,
            'num_users': instance.params.num_users,
            'nodes': nodes}


def to_json(instance):
    return json.dumps(to_dict(instance), indent=2, sort_keys=True) + '\n'


def from_dict(document):
    if not isinstance(document, dict):
        raise InputError('instance document must be a JSON object')
    if document.get('version') != SCHEMA_VERSION:
        raise InputError('unsupported instance schema version %r' % (document.get('version'),))
    try:
        params = SystemParams(as_integer(document['num_files'], 'num_files'),
                              as_integer(document['num_users'], 'num_users'))
        nodes = []
        for entry in sorted(document['nodes'], key=lambda e: as_integer(e['id'], 'node id')):
            demand = entry.get('demands')
            parent = entry.get('parent')
            cache_id = entry.get('cache_id')
            nodes.append(Node(as_integer(entry['id'], 'node id'), NodeKind(entry['kind']),
                              parent=None if parent is None else as_integer(parent, 'parent'),
                              cache_id=None if cache_id is None else as_integer(cache_id, 'cache id'),
                              demand=None if demand is None else DemandVector(tuple(demand))))
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, InputError):
            raise
        raise InputError('malformed instance document: %s' % err)
    return ProblemInstance(params, Tree(tuple(nodes)))


def from_json(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError('instance is not valid JSON: %s' % err)
    return from_dict(document)


def _files(files):
    return '{' + ','.join(str(f) for f in sorted(files)) + '}'


# Function renders the tree in DOT; edges carry W_new when a labeling is given
def to_dot(instance, result=None):
    tree = instance.tree
    lines = ['digraph instance {', '  rankdir=BT;']
    for node in tree.nodes:
        if node.kind == NodeKind.CACHE:
            attrs = 'label="Z%d" shape=box' % node.cache_id
        elif node.kind == NodeKind.DELIVERY:
            attrs = 'label="%s" shape=ellipse' % node.demand
        elif node.kind == NodeKind.ROOT:
            attrs = 'label="v*" shape=doublecircle'
        else:
            attrs = 'label="u%d" shape=circle' % node.id
        lines.append('  %d [%s];' % (node.id, attrs))
    for node in tree.nodes:
        if node.parent is None:
            continue
        if result is None:
            lines.append('  %d -> %d;' % (node.id, node.parent))
        else:
            lines.append('  %d -> %d [label="%s"];' % (node.id, node.parent, _files(result.new_files[node.id])))
    lines.append('}')
    return '\n'.join(lines) + '\n'
