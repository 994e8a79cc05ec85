# -*- coding: utf-8 -*-

import logging
from pathlib import Path
from typing import List, Optional, Union

from graphviz import ExecutableNotFound, Graph

from zfeedback import __version__, APP_NAME, APP_URL
from zfeedback.DataClasses import MessageIndex, Phase
from zfeedback.Decoder import Decoder
from zfeedback.Encoder import eligible_ranks, partition_layout
from zfeedback.zf_numerics import cw_unrank, weight

logger = logging.getLogger(__name__)

COLOR_ELIGIBLE = '#A6DBA0'
COLOR_DISCARDED = '#F4A582'
COLOR_NODE = '#FFFFFF'
FONTNAME = 'arial'


def nested_html_table(rows: List[Union[str, List[Optional[str]], None]], table_attrs: str = '') -> str:
    # input: list, each item may be scalar or list
    # output: a parent table with one child table per parent item that is list, and one cell per parent item that is scalar
    # attributes in any leading <tdX> inside a list are injected into the preceding <td> tag
    html = [f'<table border="0" cellspacing="0" cellpadding="0"{table_attrs}>']
    for row in rows:
        if isinstance(row, list):
            if any(row):
                html.append(' <tr><td>')
                html.append('  <table border="0" cellspacing="0" cellpadding="3" cellborder="1"><tr>')
                for cell in row:
                    if cell is not None:
                        html.append(f'   <td balign="left">{cell}</td>'.replace('><tdX', ''))
                html.append('  </tr></table>')
                html.append(' </td></tr>')
        elif row is not None:
            html.append(' <tr><td>')
            html.append(f'  {row}')
            html.append(' </td></tr>')
    html.append('</table>')
    return '\n'.join(html)


def html_bgcolor(color: Optional[str]) -> str:
    """Return <td> attributes prefix for bgcolor or '' if no color."""
    return f'<tdX bgcolor="{color}">' if color else ''


def segment_row(M_i: int, received: str, delta: int, p: int) -> List[str]:
    """One cell per address: its bits and segment size, colored by eligibility."""
    layout = partition_layout(M_i, delta, p)
    eligible = set(eligible_ranks(received, p))
    return [f'{html_bgcolor(COLOR_ELIGIBLE if j in eligible else COLOR_DISCARDED)}'
            f'{cw_unrank(j, delta, p).bits}<br/>{layout.size(j)}'
            for j in range(layout.count)]


def trace_graph(decoder: Decoder, decoded: Optional[MessageIndex] = None, max_segments: int = 64) -> Graph:
    """Draw the partitioning steps of a finished session, one node per subblock."""
    params = decoder.params
    delta, p = params.delta, params.p
    dot = Graph()
    dot.body.append(f'// Graph generated by {APP_NAME} {__version__}\n')
    dot.body.append(f'// {APP_URL}\n')
    dot.attr('graph', rankdir='LR', ranksep='1', nodesep='0.33', fontname=FONTNAME)
    dot.attr('node', shape='none', width='0', height='0', margin='0',
             style='filled', fillcolor=COLOR_NODE, fontname=FONTNAME)
    dot.attr('edge', style='bold', fontname=FONTNAME)

    names = []
    for i, step in enumerate(decoder.step_log):
        rows = [f'subblock {i + 1}',
                [f'received {step.received}', f'e={step.errors(p)}', f'M={step.M_i}', f'r={step.r_i}']]
        if partition_layout(step.M_i, delta, p).count <= max_segments:
            rows.append(segment_row(step.M_i, step.received, delta, p))
        else:
            rows.append(f'{len(eligible_ranks(step.received, p))} of {params.address_count} segments eligible')
        names.append(f'step{i + 1}')
        dot.node(names[-1], label=f'<\n{nested_html_table(rows)}\n>')

    phase = decoder.phase
    tail = ''.join(str(bit) for bit in decoder.received_tail)
    rows = [phase.value,
            [f'M={decoder.state.M_i}',
             f'weight {weight(tail)}' if phase == Phase.WEIGHT else (f'tail {tail}' if tail else None)],
            f'decoded {decoded}' if decoded is not None else None]
    names.append('final')
    dot.node(names[-1], label=f'<\n{nested_html_table(rows)}\n>')

    sizes = [step.M_i for step in decoder.step_log[1:]] + [decoder.state.M_i]
    for (a, b), size in zip(zip(names, names[1:]), sizes):
        dot.edge(a, b, label=str(size))
    return dot


def render_trace(dot: Graph, filename: Union[str, Path], fmt: tuple = ('svg', )) -> None:
    dot.save(filename=f'{filename}.gv')
    for f in fmt:
        dot.format = f
        try:
            dot.render(filename=filename, cleanup=True)
        except ExecutableNotFound:
            logger.warning('Graphviz executable not found, only %s.gv was written', filename)
            break
