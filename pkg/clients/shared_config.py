#!/usr/bin/env python3
"""Shared configuration for the API and WebSocket clients"""
import os
import sys

DEPLOYMENTS = {
    'local': {
        'url': 'http://localhost:5001',
    },
    'docker': {
        'url': 'http://localhost:5001',
    },
}


def get_environment():
    """Get deployment environment from args or env var; BMWSQ_URL overrides the URL"""
    env = os.environ.get('DEPLOYMENT_ENV', 'local').lower()
    if '--env' in sys.argv:
        idx = sys.argv.index('--env')
        if idx + 1 < len(sys.argv):
            env = sys.argv[idx + 1].lower()

    if env not in DEPLOYMENTS:
        print(f"❌ Invalid environment. Use: --env <{'|'.join(DEPLOYMENTS)}>")
        sys.exit(1)

    config = dict(DEPLOYMENTS[env])
    if os.environ.get('BMWSQ_URL'):
        config['url'] = os.environ['BMWSQ_URL']
    return env, config


def websocket_url(config, path):
    """http(s) base URL -> ws(s) URL for path"""
    base_url = config['url'].replace('https://', 'wss://').replace('http://', 'ws://')
    return f"{base_url}{path}"
