import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'RefSolutions.settings')
django.setup()
