# -*- coding: utf-8 -*-

from zfeedback.Decoder import Decoder
from zfeedback.Encoder import select_params
from zfeedback.zf_gv import COLOR_DISCARDED, COLOR_ELIGIBLE, html_bgcolor, nested_html_table, render_trace, \
    segment_row, trace_graph


def test_nested_table_injects_cell_attributes():
    html = nested_html_table(['title', [html_bgcolor('#FFFFFF') + 'a', None, 'b'], None, []])
    assert '<td balign="left" bgcolor="#FFFFFF">a</td>' in html
    assert '<td balign="left">b</td>' in html
    assert html.count('<tr><td>') == 2
    assert html_bgcolor(None) == ''


def test_segment_row():
    cells = segment_row(20, '0100', 4, 2)
    assert len(cells) == 6
    assert cells[0] == f'<tdX bgcolor="{COLOR_DISCARDED}">0011<br/>4'
    assert cells[2] == f'<tdX bgcolor="{COLOR_ELIGIBLE}">0110<br/>3'


def test_trace_graph(three_phase_params):
    decoder = Decoder(three_phase_params)
    for bit in '000110000000':
        decoder.observe(int(bit))
    source = trace_graph(decoder, decoder.finish()).source
    assert 'subblock 1' in source
    assert 'received 00' in source
    assert 'tail 0110000000' in source
    assert 'decoded 12' in source
    assert 'step1 -- final [label=22]' in source


def test_many_segments_are_summarised():
    decoder = Decoder(select_params(0.5, 12, 16))
    for bit in '000111111111':
        decoder.observe(int(bit))
    assert '1 of 220 segments eligible' in trace_graph(decoder).source


def test_render_writes_source(tmp_path, three_phase_params):
    decoder = Decoder(three_phase_params)
    render_trace(trace_graph(decoder), tmp_path / 'empty', fmt=())
    assert (tmp_path / 'empty.gv').read_text().startswith('graph {')
