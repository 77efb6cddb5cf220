#!/usr/bin/env python3
"""
Script to run the Virasoro Engine FastAPI Server
"""
import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import uvicorn
from dotenv import load_dotenv

from server_app.main import app

load_dotenv()

if __name__ == "__main__":
    host = os.getenv("SERVER_HOST", "localhost")
    port = int(os.getenv("SERVER_PORT", "8000"))

    print(f"Starting Virasoro Engine server on {host}:{port}")
    uvicorn.run(app, host=host, port=port)
