from datetime import datetime

source_suffix = '.rst'
master_doc = 'index'

project = 'mesh-dispatch'
copyright = '{} mesh-dispatch developers'.format(datetime.now().year)
