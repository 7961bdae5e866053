from mtaug.commands.augment import register_augment_commands as augment_commands
from mtaug.commands.corpus import register_corpus_commands as corpus_commands
from mtaug.commands.evaluation import register_evaluation_commands as evaluation_commands
