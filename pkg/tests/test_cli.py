import json

from click.testing import CliRunner
import pytest

from keyphrase.cli import cli
from keyphrase.corpus import LabelScheme, convert_corpus, load_corpus, write_corpus


# small networks so that the command line tests train in a moment
SMALL = {'HIDDEN1': 6, 'HIDDEN2': 6, 'EPOCHS': 2, 'PATIENCE': 2, 'WINDOW': 1}


def invoke(args, **kwargs):
    result = CliRunner().invoke(cli, [str(arg) for arg in args], obj=dict(SMALL), **kwargs)
    return result


@pytest.fixture
def generated(tmp_path):
    result = invoke(['generate', '--out-dir', tmp_path / 'data', '--tweets', 20,
                     '--dimension', 8, '--seed', 1])
    assert result.exit_code == 0, result.output
    data = tmp_path / 'data'
    return {name: data / filename for name, filename in [
        ('corpus', 'corpus.conll'), ('embeddings', 'embeddings.txt'),
        ('synsets', 'synsets.tsv'), ('stopwords', 'stopwords.txt')]}


@pytest.fixture
def model_path(generated, tmp_path):
    path = tmp_path / 'model.kp'
    result = invoke(['train', '--corpus', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--model', path,
                     '--alpha', 0.3, '--use-pos'])
    assert result.exit_code == 0, result.output
    return path


def test_generate(generated):
    corpus = load_corpus(generated['corpus'], LabelScheme.KP3)
    assert len(corpus) == 20
    assert generated['embeddings'].read_text().splitlines()[0].split()[1] == '8'
    manifest = json.loads((generated['corpus'].parent / 'corpus.conll.manifest.json')
                          .read_text())
    assert manifest['command'] == 'generate'
    assert manifest['seed'] == 1


def test_train_writes_model_history_and_manifest(model_path):
    assert model_path.exists()
    history = model_path.parent / 'model.kp.history.tsv'
    assert history.read_text().splitlines()[0] == 'Epoch\tLoss\tP\tR\tF1\tAcc'
    manifest = json.loads((model_path.parent / 'model.kp.manifest.json').read_text())
    assert manifest['command'] == 'train'
    assert manifest['options']['alpha'] == 0.3
    assert manifest['options']['hidden1'] == 6
    assert set(manifest['inputs']) == {'corpus', 'embeddings'}


def test_seed_from_environment(generated, tmp_path):
    path = tmp_path / 'env.kp'
    result = invoke(['train', '--corpus', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--model', path],
                    env={'KEYPHRASE_SEED': '7'})
    assert result.exit_code == 0, result.output
    manifest = json.loads((tmp_path / 'env.kp.manifest.json').read_text())
    assert manifest['seed'] == 7


def test_predict(generated, model_path, tmp_path):
    out = tmp_path / 'labelled.conll'
    result = invoke(['predict', '--model', model_path, '--corpus', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--out', out])
    assert result.exit_code == 0, result.output
    labelled = load_corpus(out, LabelScheme.KP3)
    original = load_corpus(generated['corpus'], LabelScheme.KP3)
    assert labelled.ids == original.ids
    assert [tweet.forms for tweet in labelled] == [tweet.forms for tweet in original]

    phrases = tmp_path / 'phrases.tsv'
    result = invoke(['predict', '--model', model_path, '--corpus', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--phrases', '--out', phrases])
    assert result.exit_code == 0, result.output
    for line in phrases.read_text().splitlines():
        tweet_id, span, phrase = line.split('\t')
        assert tweet_id in original.ids
        assert phrase


def test_predict_rejects_other_scheme(generated, model_path, tmp_path):
    kp5 = tmp_path / 'kp5.conll'
    with open(kp5, 'w', encoding='utf-8') as fp:
        write_corpus(convert_corpus(load_corpus(generated['corpus'], LabelScheme.KP3),
                                    LabelScheme.KP5), fp)
    result = invoke(['predict', '--model', model_path, '--corpus', kp5,
                     '--embeddings', generated['embeddings']])
    assert result.exit_code == 2


def test_eval(generated, model_path, tmp_path):
    out = tmp_path / 'eval.tsv'
    result = invoke(['eval', '--model', model_path, '--test', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--out', out])
    assert result.exit_code == 0, result.output
    assert 'model.kp' in result.output
    header, row = out.read_text().splitlines()
    assert header == 'Method\tP\tR\tF1\tAcc'
    assert row.startswith('model.kp\t')


def test_augment(generated, tmp_path):
    args = ['augment', '--corpus', generated['corpus'], '--synsets', generated['synsets'],
            '--stopwords', generated['stopwords']]
    identity = tmp_path / 'identity.conll'
    result = invoke(args + ['--n', 0, '--out', identity])
    assert result.exit_code == 0, result.output
    assert identity.read_text() == generated['corpus'].read_text()

    first, second = tmp_path / 'first.conll', tmp_path / 'second.conll'
    invoke(args + ['--seed', 5, '--out', first])
    invoke(args + ['--seed', 5, '--out', second])
    assert first.read_text() == second.read_text()
    assert len(load_corpus(first, LabelScheme.KP3)) == 80
    manifest = json.loads((tmp_path / 'first.conll.manifest.json').read_text())
    assert set(manifest['inputs']) == {'corpus', 'synsets', 'stopwords'}


def test_rake(fixtures, tmp_path):
    args = ['rake', '--corpus', fixtures / 'rake.conll',
            '--stopwords', fixtures / 'stopwords.txt']
    ranked = tmp_path / 'ranked.tsv'
    result = invoke(args + ['--out', ranked])
    assert result.exit_code == 0, result.output
    assert ranked.read_text().splitlines() == [
        'r1\t1\t0-1\tdeep learning\t4.0000',
        'r1\t2\t3-4\tdeep models\t4.0000',
    ]
    labelled = tmp_path / 'labelled.conll'
    invoke(args + ['--labels', '--out', labelled])
    assert load_corpus(labelled, LabelScheme.KP3).tweets[0].labels == ['1', '2', '0', '0', '0']


def test_rake_on_empty_corpus(fixtures, tmp_path):
    empty = tmp_path / 'empty.conll'
    empty.write_text('')
    out = tmp_path / 'ranked.tsv'
    result = invoke(['rake', '--corpus', empty, '--stopwords', fixtures / 'stopwords.txt',
                     '--out', out])
    assert result.exit_code == 0
    assert out.read_text() == ''


def test_gradcheck():
    result = invoke(['gradcheck', '--length', 2, '--seed', 3])
    assert result.exit_code == 0, result.output
    assert 'FAIL' not in result.output
    result = invoke(['gradcheck', '--length', 2, '--seed', 3, '--inject-error'])
    assert result.exit_code == 1
    assert 'FAIL' in result.output


def test_gradcheck_writes_table_and_manifest(tmp_path):
    out = tmp_path / 'grad.tsv'
    result = invoke(['gradcheck', '--length', 2, '--seed', 3, '--epsilon', 1e-5,
                     '--out', out])
    assert result.exit_code == 0, result.output
    header, *rows = out.read_text().splitlines()
    assert header.split('\t')[0] == 'Family'
    assert rows and all(row.endswith('\tok') for row in rows)
    manifest = json.loads((tmp_path / 'grad.tsv.manifest.json').read_text())
    assert manifest['command'] == 'gradcheck'
    assert manifest['seed'] == 3
    assert manifest['options']['epsilon'] == 1e-5
    assert manifest['options']['length'] == 2
    assert manifest['inputs'] == {}


def test_missing_input_file(generated, tmp_path):
    result = invoke(['train', '--corpus', generated['corpus'],
                     '--embeddings', tmp_path / 'missing.txt', '--model', tmp_path / 'm.kp'])
    assert result.exit_code == 2


def test_malformed_corpus(generated, tmp_path):
    bad = tmp_path / 'bad.conll'
    bad.write_text('bank\tNN\tO\t_\troot\n')
    result = invoke(['train', '--corpus', bad, '--embeddings', generated['embeddings'],
                     '--model', tmp_path / 'm.kp'])
    assert result.exit_code == 2
    assert 'bad.conll:1' in result.output


def test_sweep(generated):
    result = invoke(['sweep', '--corpus', generated['corpus'], '--test', generated['corpus'],
                     '--embeddings', generated['embeddings'], '--alphas', '0.2,0.8'])
    assert result.exit_code == 0, result.output
    assert 'Alpha' in result.output
    bad = invoke(['sweep', '--corpus', generated['corpus'], '--test', generated['corpus'],
                  '--embeddings', generated['embeddings'], '--alphas', 'x'])
    assert bad.exit_code == 2


def test_compare(generated, tmp_path):
    out = tmp_path / 'compare.tsv'
    result = invoke(['compare', '--corpus', generated['corpus'],
                     '--test', generated['corpus'], '--embeddings', generated['embeddings'],
                     '--stopwords', generated['stopwords'],
                     '--methods', 'RAKE,JRNN3-WE', '--out', out])
    assert result.exit_code == 0, result.output
    rows = out.read_text().splitlines()[1:]
    assert [row.split('\t')[0] for row in rows] == ['RAKE', 'JRNN3-WE']


def test_compare_unknown_method(generated):
    result = invoke(['compare', '--corpus', generated['corpus'],
                     '--test', generated['corpus'], '--embeddings', generated['embeddings'],
                     '--methods', 'CRF-WE'])
    assert result.exit_code == 2
    assert 'CRF-WE' in result.output


def test_stats(fixtures):
    result = invoke(['stats', '--corpus', fixtures / 'small.conll'])
    assert result.exit_code == 0, result.output
    assert 'Total Data\tTotal Keyphrase\tAverage Keyphrase' in result.output
    assert '4\t4\t1.00\t14\t0:8 1:4 2:2' in result.output
